#pragma once

#include <cstddef>
#include <utility>

#include "rrsvd/errors.hpp"
#include "rrsvd/linalg.hpp"

namespace rrsvd {

/// Polar factorization A = P W = W Q derived from the SVD: P = U D U^T and
/// Q = V D V^T are symmetric positive (semi)definite, W = U V^T is
/// orthogonal. P and Q share the Frobenius norm of A, and P = W Q W^T.
struct PolarFactors {
  DenseMatrix p;
  DenseMatrix q;
  DenseMatrix w;
  bool positive_definite;  // false when A is rank deficient (factors only PSD)
};

inline PolarFactors polar_factors(const SvdResult& s) {
  if (s.u.rows() != s.v.rows())
    throw ShapeError("polar factors require the SVD of a square matrix");
  const std::size_t n = s.u.rows();
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = s.sigma[i];
  const DenseMatrix ut = s.u.transposed();
  const DenseMatrix vt = s.v.transposed();
  return PolarFactors{s.u * d * ut, s.v * d * vt, s.u * vt, s.rank_hint == n};
}

/// The two hypothetical symmetric tournaments. `offense_mirrored` sets each
/// team's defense attributes equal to its offense attributes (v_i = u_i,
/// table P); `defense_mirrored` is the converse (u_i = v_i, table Q). Every
/// pairing ends in a draw: match (i, j) is read as entry (i, j) for both
/// sides of the score line.
enum class MirrorMode { offense_mirrored, defense_mirrored };

inline DenseMatrix hypothetical_scores(const PolarFactors& f, MirrorMode mode) {
  return mode == MirrorMode::offense_mirrored ? f.p : f.q;
}

}  // namespace rrsvd
