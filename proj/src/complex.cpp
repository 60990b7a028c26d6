#include "aomega/complex.hpp"

#include "aomega/ainf.hpp"

namespace aomega {

std::vector<std::vector<int>> koszul_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

ChainComplex<ModRing> mod_f(const ChainComplex<IntegerRing>& k, const Integer& n) {
  if (n <= 0) throw std::invalid_argument("mod_f: modulus must be positive");
  const ModRing r{n};
  std::vector<RingMatrix<ModRing>> diffs;
  for (const auto& d : k.diffs()) {
    auto m = zero_matrix(r, d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) m.at(i, j) = r.normalize(d.at(i, j));
    diffs.push_back(std::move(m));
  }
  return ChainComplex<ModRing>(r, k.lo(), k.ranks(), std::move(diffs));
}

ChainComplex<CyclotomicRing> mod_xi(const ChainComplex<LaurentRing>& k) {
  const CyclotomicRing r{k.ring().p, k.ring().depth};
  std::vector<RingMatrix<CyclotomicRing>> diffs;
  for (const auto& d : k.diffs()) {
    auto m = zero_matrix(r, d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) m.at(i, j) = theta(d.at(i, j));
    diffs.push_back(std::move(m));
  }
  return ChainComplex<CyclotomicRing>(r, k.lo(), k.ranks(), std::move(diffs));
}

}  // namespace aomega
