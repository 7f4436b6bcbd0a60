#pragma once

// Independent membership oracle: searches for cofactors of bounded total
// degree by solving the linear system on coefficient vectors over F_p.
// It shares nothing with the Groebner engine beyond the polynomial type.

#include <map>
#include <optional>
#include <vector>

#include "ddsurf/polynomial.hpp"

namespace ddsurf::testing {

inline std::vector<Monomial> monomials_up_to(const std::vector<int>& vars, int max_deg) {
  std::vector<Monomial> out{Monomial{}};
  for (int v : vars) {
    std::vector<Monomial> next;
    for (const auto& m : out)
      for (int e = 0; m.degree() + e <= max_deg; ++e) {
        Monomial n = m;
        n.set(v, e);
        next.push_back(n);
      }
    out = std::move(next);
  }
  return out;
}

/// Cofactors c_j with deg c_j <= max_cofactor_degree and sum c_j g_j == target,
/// or nullopt if none exist at that degree.
inline std::optional<std::vector<Polynomial<PrimeField>>> bounded_cofactor_search(
    const Polynomial<PrimeField>& target, const std::vector<Polynomial<PrimeField>>& gens,
    const std::vector<int>& vars, int max_cofactor_degree) {
  const PrimeField& k = target.field();
  const std::uint64_t p = k.modulus();
  auto shifts = monomials_up_to(vars, max_cofactor_degree);

  std::map<Monomial, std::size_t> row_of;
  auto row = [&](const Monomial& m) {
    auto [it, fresh] = row_of.emplace(m, row_of.size());
    return it->second;
  };
  struct Column {
    std::size_t gen;
    Monomial shift;
    std::vector<std::pair<std::size_t, std::uint32_t>> entries;
  };
  std::vector<Column> cols;
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (const auto& s : shifts) {
      Column c{j, s, {}};
      for (const auto& t : gens[j].terms()) c.entries.push_back({row(t.monomial * s), t.coeff});
      cols.push_back(std::move(c));
    }
  std::vector<std::pair<std::size_t, std::uint32_t>> rhs;
  for (const auto& t : target.terms()) rhs.push_back({row(t.monomial), t.coeff});

  const std::size_t nrows = row_of.size(), ncols = cols.size();
  std::vector<std::vector<std::uint64_t>> a(nrows, std::vector<std::uint64_t>(ncols + 1, 0));
  for (std::size_t c = 0; c < ncols; ++c)
    for (auto [r, v] : cols[c].entries) a[r][c] = (a[r][c] + v) % p;
  for (auto [r, v] : rhs) a[r][ncols] = (a[r][ncols] + v) % p;

  auto inv = [&](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t piv = rank;
    while (piv < nrows && a[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[rank]);
    std::uint64_t iv = inv(a[rank][c]);
    for (auto& x : a[rank]) x = x * iv % p;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      std::uint64_t f = a[r][c];
      for (std::size_t cc = 0; cc <= ncols; ++cc) a[r][cc] = (a[r][cc] + (p - f) * a[rank][cc]) % p;
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < nrows; ++r)
    if (a[r][ncols] != 0) return std::nullopt;

  std::vector<std::vector<Polynomial<PrimeField>::Term>> terms(gens.size());
  for (std::size_t r = 0; r < rank; ++r) {
    const auto& c = cols[pivot_col[r]];
    terms[c.gen].push_back({c.shift, static_cast<std::uint32_t>(a[r][ncols])});
  }
  std::vector<Polynomial<PrimeField>> out;
  for (auto& t : terms) out.push_back(Polynomial<PrimeField>::from_terms(k, std::move(t)));
  return out;
}

}  // namespace ddsurf::testing
