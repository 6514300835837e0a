#pragma once

// Randomized operator-level tests of the defining inequalities:
//   monotone     A <= B  =>  f(A) <= f(B)
//   convex       f(l A + (1-l) B) <= l f(A) + (1-l) f(B)
//   contraction  f(c* a c) <= c* f(a) c  for ||c|| <= 1
// on n x n real symmetric matrices with spectra inside the interval.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/rng.hpp"
#include "loewner/spectra.hpp"
#include "loewner/witness_record.hpp"

namespace loewner {

/// Row-major n x n orthogonal matrix: a product of n Householder reflectors
/// built from Gaussian vectors.
std::vector<double> random_orthogonal(std::size_t n, Rng& rng);

/// Q^T D Q with D uniform on the interval shrunk by 1e-6 of its length at
/// each end, and Q from random_orthogonal.
SymmetricMatrix<double> sample_selfadjoint(std::size_t n, const Interval& interval, Rng& rng);

/// Q f(L) Q^T. Eigenvalues within 1e-12 * max(1, |A|) outside the domain of
/// fn are clamped to the nearest endpoint; anything further out throws.
template <Scalar T>
SymmetricMatrix<T> apply_matrix_function(const Univariate& fn, const SymmetricMatrix<T>& a);

extern template SymmetricMatrix<double> apply_matrix_function<double>(const Univariate&,
                                                                      const SymmetricMatrix<double>&);
extern template SymmetricMatrix<BigFloat> apply_matrix_function<BigFloat>(const Univariate&,
                                                                          const SymmetricMatrix<BigFloat>&);

enum class SearchKind { Monotone, Convex, Contraction };

const char* search_kind_name(SearchKind k);
SearchKind parse_search_kind(std::string_view s);

struct WitnessSearchOptions {
  int certify_digits = default_big_digits();
  int max_certify = 64;
  int max_witnesses = 16;
};

struct WitnessSearchResult {
  SearchKind kind = SearchKind::Monotone;
  int n = 0;
  std::string function;
  Interval interval;
  std::uint64_t seed = 0;
  long samples = 0;
  long screened = 0;   // defects failing the binary64 (or configured) screen
  long certified = 0;  // confirmed in big precision
  std::vector<WitnessRecord> witnesses;
};

/// Sample i draws from Rng::stream(seed, i).
WitnessSearchResult operator_witness_search(const Univariate& fn, const Interval& interval, int n, SearchKind kind,
                                            long samples, std::uint64_t seed, const PrecisionCfg& precision,
                                            const WitnessSearchOptions& options = {});

}  // namespace loewner
