#include "ddsurf/groebner.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace ddsurf {

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  std::array<int, kMaxVars> perm{};
  std::array<bool, kMaxVars> used{};
  int n = 0;
  for (int v : priority)
    if (v >= 0 && v < kMaxVars && !used[v]) used[v] = true, perm[n++] = v;
  for (int v = 0; v < kMaxVars; ++v)
    if (!used[v]) perm[n++] = v;

  if (kind == Kind::lex) {
    for (int v : perm)
      if (a[v] != b[v]) return a[v] <=> b[v];
    return std::strong_ordering::equal;
  }
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    int v = perm[i];
    if (a[v] != b[v]) return b[v] <=> a[v];
  }
  return std::strong_ordering::equal;
}

namespace {

// Flattened comparison so the hot loops avoid rebuilding the permutation.
class Comparator {
 public:
  explicit Comparator(const MonomialOrder& order) : lex_(order.kind == MonomialOrder::Kind::lex) {
    std::array<bool, kMaxVars> used{};
    int n = 0;
    for (int v : order.priority)
      if (v >= 0 && v < kMaxVars && !used[v]) used[v] = true, perm_[n++] = v;
    for (int v = 0; v < kMaxVars; ++v)
      if (!used[v]) perm_[n++] = v;
  }

  bool less(const Monomial& a, const Monomial& b) const {
    if (lex_) {
      for (int v : perm_)
        if (a[v] != b[v]) return a[v] < b[v];
      return false;
    }
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = kMaxVars - 1; i >= 0; --i) {
      int v = perm_[i];
      if (a[v] != b[v]) return a[v] > b[v];
    }
    return false;
  }

 private:
  bool lex_;
  std::array<int, kMaxVars> perm_{};
};

// Terms sorted ascending under the working order: the leading term is back().
template <Field F>
using Terms = std::vector<typename Polynomial<F>::Term>;

template <Field F>
Terms<F> to_work(const Polynomial<F>& p, const Comparator& cmp) {
  Terms<F> t = p.terms();
  std::sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return cmp.less(a.monomial, b.monomial); });
  return t;
}

template <Field F>
Polynomial<F> from_work(const F& k, Terms<F> t) {
  return Polynomial<F>::from_terms(k, std::move(t));
}

// a -= c * m * b, both ascending.
template <Field F>
void sub_scaled(Terms<F>& a, const typename F::Scalar& c, const Monomial& m, const Terms<F>& b, const F& k,
                const Comparator& cmp) {
  Terms<F> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end()) {
      out.push_back(std::move(*i++));
      continue;
    }
    Monomial mj = j->monomial * m;
    if (i == a.end() || cmp.less(mj, i->monomial)) {
      out.push_back({mj, k.neg(k.mul(c, j->coeff))});
      ++j;
    } else if (cmp.less(i->monomial, mj)) {
      out.push_back(std::move(*i++));
    } else {
      auto v = k.sub(i->coeff, k.mul(c, j->coeff));
      if (!k.is_zero(v)) out.push_back({mj, std::move(v)});
      ++i, ++j;
    }
  }
  a = std::move(out);
}

template <Field F>
class Engine {
 public:
  using Poly = Polynomial<F>;
  using Scalar = typename F::Scalar;

  Engine(const F& field, const MonomialOrder& order, std::size_t ngens, const GroebnerLimits& limits)
      : k_(field), cmp_(order), ngens_(ngens), limits_(limits) {}

  // Appends an element with the given cofactor row.
  void add(Terms<F> g, std::vector<Poly> row) {
    if (elements_.size() >= limits_.max_basis)
      throw ResourceExhausted("Groebner basis exceeded " + std::to_string(limits_.max_basis) + " elements");
    for (const auto& t : g)
      if (t.monomial.degree() > limits_.max_degree)
        throw ResourceExhausted("Groebner basis element exceeded total degree " +
                                std::to_string(limits_.max_degree));
    elements_.push_back(std::move(g));
    rows_.push_back(std::move(row));
  }

  std::size_t size() const { return elements_.size(); }
  const Terms<F>& element(std::size_t i) const { return elements_[i]; }
  const Monomial& lead(std::size_t i) const { return elements_[i].back().monomial; }
  const std::vector<Poly>& row(std::size_t i) const { return rows_[i]; }

  // Full reduction of p by the elements listed in `active`.  Quotient terms
  // are accumulated per element index.
  Terms<F> reduce(Terms<F> p, const std::vector<std::size_t>& active, std::vector<Terms<F>>& quotients) const {
    quotients.assign(elements_.size(), {});
    Terms<F> remainder;  // collected descending
    while (!p.empty()) {
      const auto& lt = p.back();
      std::size_t hit = elements_.size();
      for (std::size_t j : active)
        if (lead(j).divides(lt.monomial)) {
          hit = j;
          break;
        }
      if (hit == elements_.size()) {
        remainder.push_back(std::move(p.back()));
        p.pop_back();
        continue;
      }
      Scalar c = k_.div(lt.coeff, elements_[hit].back().coeff);
      Monomial m = lt.monomial / lead(hit);
      quotients[hit].push_back({m, c});
      sub_scaled(p, c, m, elements_[hit], k_, cmp_);
    }
    std::reverse(remainder.begin(), remainder.end());
    return remainder;
  }

  // sum over j of base[j] - sum_k q_k * rows[k][j]
  std::vector<Poly> combine_rows(std::vector<Poly> base, const std::vector<Terms<F>>& quotients) const {
    for (std::size_t e = 0; e < quotients.size(); ++e) {
      if (quotients[e].empty()) continue;
      Poly q = Poly::from_terms(k_, quotients[e]);
      for (std::size_t j = 0; j < ngens_; ++j)
        if (!rows_[e][j].is_zero()) base[j] -= q * rows_[e][j];
    }
    return base;
  }

  void run() {
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < elements_.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

    while (!pending.empty()) {
      // normal strategy: least lcm first, ties broken by indices
      auto best = pending.begin();
      Monomial best_lcm = lcm(lead(best->first), lead(best->second));
      for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
        Monomial l = lcm(lead(it->first), lead(it->second));
        if (cmp_.less(l, best_lcm)) best = it, best_lcm = l;
      }
      auto [i, j] = *best;
      pending.erase(best);

      if (coprime(lead(i), lead(j))) continue;
      if (chain_criterion(i, j, best_lcm, pending)) continue;

      const auto& gi = elements_[i];
      const auto& gj = elements_[j];
      Monomial mi = best_lcm / lead(i), mj = best_lcm / lead(j);
      Scalar ci = k_.inv(gi.back().coeff), cj = k_.inv(gj.back().coeff);

      Terms<F> s;
      sub_scaled(s, k_.neg(ci), mi, gi, k_, cmp_);
      sub_scaled(s, cj, mj, gj, k_, cmp_);

      std::vector<Poly> row(ngens_, Poly(k_));
      for (std::size_t g = 0; g < ngens_; ++g) {
        row[g] = rows_[i][g].times_term(mi, ci) - rows_[j][g].times_term(mj, cj);
      }

      std::vector<std::size_t> active(elements_.size());
      for (std::size_t e = 0; e < active.size(); ++e) active[e] = e;
      std::vector<Terms<F>> quotients;
      Terms<F> h = reduce(std::move(s), active, quotients);
      if (h.empty()) continue;

      row = combine_rows(std::move(row), quotients);
      std::size_t n = elements_.size();
      add(std::move(h), std::move(row));
      for (std::size_t e = 0; e < n; ++e) pending.insert({e, n});
    }
  }

  // Indices of a minimal basis: no leading term divides another.
  std::vector<std::size_t> minimal() const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < elements_.size() && !redundant; ++j) {
        if (i == j) continue;
        if (lead(j).divides(lead(i)) && (lead(j) != lead(i) || j < i)) redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    return keep;
  }

  GroebnerBasis<F> finish(const IdealBasis<F>& input) {
    std::vector<std::size_t> keep = minimal();
    // tail-reduce each kept element against the others
    for (std::size_t idx : keep) {
      std::vector<std::size_t> others;
      for (std::size_t o : keep)
        if (o != idx) others.push_back(o);
      Terms<F> g = elements_[idx];
      auto lt = g.back();
      g.pop_back();
      std::vector<Terms<F>> quotients;
      Terms<F> tail = reduce(std::move(g), others, quotients);
      tail.push_back(std::move(lt));
      rows_[idx] = combine_rows(rows_[idx], quotients);
      elements_[idx] = std::move(tail);
    }
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) { return cmp_.less(lead(b), lead(a)); });

    GroebnerBasis<F> gb{k_, input.order, input.generators, {}, {}};
    for (std::size_t idx : keep) {
      Scalar inv = k_.inv(elements_[idx].back().coeff);
      gb.elements.push_back(from_work(k_, elements_[idx]).scaled(inv));
      std::vector<Poly> row;
      for (const auto& c : rows_[idx]) row.push_back(c.scaled(inv));
      gb.transform.push_back(std::move(row));
    }
    return gb;
  }

 private:
  bool chain_criterion(std::size_t i, std::size_t j, const Monomial& l,
                       const std::set<std::pair<std::size_t, std::size_t>>& pending) const {
    auto key = [](std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (k == i || k == j) continue;
      if (!lead(k).divides(l)) continue;
      if (pending.count(key(i, k)) || pending.count(key(j, k))) continue;
      return true;
    }
    return false;
  }

  F k_;
  Comparator cmp_;
  std::size_t ngens_;
  GroebnerLimits limits_;
  std::vector<Terms<F>> elements_;
  std::vector<std::vector<Poly>> rows_;
};

template <Field F>
void check_fields(const IdealBasis<F>& basis) {
  for (const auto& g : basis.generators)
    if (!(g.field() == basis.field)) throw FieldMismatch("ideal generator over a different field");
}

}  // namespace

template <Field F>
Monomial leading_monomial(const Polynomial<F>& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading_monomial of zero");
  Comparator cmp(order);
  Monomial best = p.terms().front().monomial;
  for (const auto& t : p.terms())
    if (cmp.less(best, t.monomial)) best = t.monomial;
  return best;
}

template <Field F>
GroebnerBasis<F> buchberger(const IdealBasis<F>& basis, const GroebnerLimits& limits) {
  check_fields(basis);
  const std::size_t n = basis.generators.size();
  Comparator cmp(basis.order);
  Engine<F> engine(basis.field, basis.order, n, limits);
  // Generators enter smallest leading term first, each reduced by those
  // already present, so the caps apply to reduced inputs (X^n kills the
  // high X-powers of a large generator before they can spread).
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j)
    if (!basis.generators[j].is_zero()) idx.push_back(j);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return basis.order.compare(leading_monomial(basis.generators[a], basis.order),
                               leading_monomial(basis.generators[b], basis.order)) < 0;
  });
  for (std::size_t j : idx) {
    std::vector<std::size_t> active(engine.size());
    for (std::size_t e = 0; e < active.size(); ++e) active[e] = e;
    std::vector<Terms<F>> quotients;
    Terms<F> h = engine.reduce(to_work(basis.generators[j], cmp), active, quotients);
    if (h.empty()) continue;
    std::vector<Polynomial<F>> row(n, Polynomial<F>(basis.field));
    row[j] = Polynomial<F>::integer(basis.field, 1);
    engine.add(std::move(h), engine.combine_rows(std::move(row), quotients));
  }
  engine.run();
  return engine.finish(basis);
}

template <Field F>
Reduction<F> reduce_full(const Polynomial<F>& p, const GroebnerBasis<F>& gb) {
  if (!(p.field() == gb.field)) throw FieldMismatch("reduce_full: polynomial over a different field");
  const std::size_t n = gb.generators.size();
  Comparator cmp(gb.order);
  Engine<F> engine(gb.field, gb.order, n, GroebnerLimits{gb.elements.size() + 1, 1 << 20});
  for (std::size_t e = 0; e < gb.elements.size(); ++e) engine.add(to_work(gb.elements[e], cmp), gb.transform[e]);
  std::vector<std::size_t> active(gb.elements.size());
  for (std::size_t e = 0; e < active.size(); ++e) active[e] = e;
  std::vector<Terms<F>> quotients;
  Terms<F> rem = engine.reduce(to_work(p, cmp), active, quotients);
  // cofactors are minus the combination that combine_rows subtracts
  std::vector<Polynomial<F>> zero(n, Polynomial<F>(gb.field));
  std::vector<Polynomial<F>> neg = engine.combine_rows(std::move(zero), quotients);
  MembershipCertificate<F> cert;
  for (auto& c : neg) cert.cofactors.push_back(-c);
  return {from_work(gb.field, std::move(rem)), std::move(cert)};
}

template <Field F>
Polynomial<F> normal_form(const Polynomial<F>& p, const GroebnerBasis<F>& gb) {
  if (!(p.field() == gb.field)) throw FieldMismatch("normal_form: polynomial over a different field");
  const F& k = gb.field;
  Comparator cmp(gb.order);
  std::vector<Terms<F>> basis;
  for (const auto& e : gb.elements) basis.push_back(to_work(e, cmp));
  Terms<F> work = to_work(p, cmp), rem;
  while (!work.empty()) {
    const auto& lead = work.back();
    auto div = std::find_if(basis.begin(), basis.end(),
                            [&](const Terms<F>& b) { return b.back().monomial.divides(lead.monomial); });
    if (div == basis.end()) {
      rem.push_back(std::move(work.back()));
      work.pop_back();
      continue;
    }
    // elements are monic
    sub_scaled(work, typename F::Scalar(lead.coeff), lead.monomial / div->back().monomial, *div, k, cmp);
  }
  return from_work(k, std::move(rem));
}

template <Field F>
bool certificate_reconstructs(const MembershipCertificate<F>& cert, const std::vector<Polynomial<F>>& generators,
                              const Polynomial<F>& target, const Polynomial<F>* remainder) {
  if (cert.cofactors.size() != generators.size()) return false;
  Polynomial<F> sum = remainder ? *remainder : Polynomial<F>(target.field());
  for (std::size_t j = 0; j < generators.size(); ++j) sum += cert.cofactors[j] * generators[j];
  return sum == target;
}

template <Field F>
std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>& p, const GroebnerBasis<F>& gb) {
  Reduction<F> r = reduce_full(p, gb);
  if (!r.normal_form.is_zero()) return std::nullopt;
  if (!certificate_reconstructs(r.certificate, gb.generators, p))
    throw std::logic_error("internal error: membership certificate does not reconstruct the query");
  return std::move(r.certificate);
}

template <Field F>
std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>& p, const IdealBasis<F>& basis,
                                                  const GroebnerLimits& limits) {
  return is_member(p, buchberger(basis, limits));
}

template <Field F>
bool ideals_equal(const IdealBasis<F>& a, const IdealBasis<F>& b, const GroebnerLimits& limits) {
  GroebnerBasis<F> ga = buchberger(a, limits);
  GroebnerBasis<F> gb = buchberger(b, limits);
  for (const auto& g : a.generators)
    if (!reduce_full(g, gb).normal_form.is_zero()) return false;
  for (const auto& g : b.generators)
    if (!reduce_full(g, ga).normal_form.is_zero()) return false;
  return true;
}

template <Field F>
std::optional<Polynomial<F>> is_unit_modulo(const Polynomial<F>& p, const IdealBasis<F>& basis,
                                            const GroebnerLimits& limits) {
  if (p.is_zero()) return std::nullopt;
  IdealBasis<F> augmented{basis.field, {p}, basis.order};
  augmented.generators.insert(augmented.generators.end(), basis.generators.begin(), basis.generators.end());
  auto cert = is_member(Polynomial<F>::integer(basis.field, 1), augmented, limits);
  if (!cert) return std::nullopt;
  return cert->cofactors.front();
}

#define DDSURF_INSTANTIATE(F)                                                                              \
  template Monomial leading_monomial(const Polynomial<F>&, const MonomialOrder&);                          \
  template GroebnerBasis<F> buchberger(const IdealBasis<F>&, const GroebnerLimits&);                       \
  template Polynomial<F> normal_form(const Polynomial<F>&, const GroebnerBasis<F>&); \
  template Reduction<F> reduce_full(const Polynomial<F>&, const GroebnerBasis<F>&);                        \
  template std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>&, const GroebnerBasis<F>&); \
  template std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>&, const IdealBasis<F>&,   \
                                                             const GroebnerLimits&);                       \
  template bool ideals_equal(const IdealBasis<F>&, const IdealBasis<F>&, const GroebnerLimits&);           \
  template std::optional<Polynomial<F>> is_unit_modulo(const Polynomial<F>&, const IdealBasis<F>&,         \
                                                       const GroebnerLimits&);                             \
  template bool certificate_reconstructs(const MembershipCertificate<F>&, const std::vector<Polynomial<F>>&, \
                                         const Polynomial<F>&, const Polynomial<F>*);

DDSURF_INSTANTIATE(Rationals)
DDSURF_INSTANTIATE(PrimeField)

#undef DDSURF_INSTANTIATE

}  // namespace ddsurf
