#pragma once

#include "equichain/functors.hpp"
#include "equichain/homology.hpp"
#include "equichain/hyper.hpp"
#include "equichain/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equichain {

namespace detail {

inline std::int64_t prime_order(const EquivariantChainComplex& x) {
  const auto p = static_cast<std::int64_t>(x.group.order());
  if (!is_prime(p)) throw Error(ErrorCode::NotPrimeOrder, "group order " + std::to_string(p) + " is not prime");
  return p;
}

inline std::string list_groups(const std::vector<AbelianGroup>& gs) {
  std::string out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) out += ", ";
    out += gs[i].to_string();
  }
  return "(" + out + ")";
}

// Reduced mod-p Betti numbers; b~_0 = b_0 - 1.
inline std::vector<long> reduced_betti(const GradedGroup& h) {
  std::vector<long> b;
  for (int k = 0; k <= h.top(); ++k) b.push_back(static_cast<long>(h.rank(k)) - (k == 0 ? 1 : 0));
  if (b.empty()) b.push_back(-1);
  return b;
}

// Degree m when the reduced homology is Z/p in exactly degree m.
inline std::optional<int> sphere_degree(const std::vector<long>& b) {
  std::optional<int> m;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0) continue;
    if (b[k] != 1 || m) return std::nullopt;
    m = static_cast<int>(k);
  }
  return m;
}

inline bool all_zero(const std::vector<long>& b) {
  for (auto v : b)
    if (v != 0) return false;
  return true;
}

}  // namespace detail

// Smith theory for G = Z/p: X a mod-p homology sphere gives an empty or
// mod-p homology-sphere fixed set; X mod-p acyclic gives a mod-p acyclic one.
inline Report smith_check(const EquivariantChainComplex& x) {
  const std::int64_t p = detail::prime_order(x);
  const Coefficients zp = Coefficients::mod(p);
  Report rep;
  rep.title = "Smith theory over Z/" + std::to_string(p);
  const auto bx = detail::reduced_betti(homology(x.chains, zp));
  const auto sx = detail::sphere_degree(bx);
  const bool point_case = detail::all_zero(bx);
  if (!sx && !point_case) {
    rep.add_inapplicable("hypothesis", "X is neither a mod-p homology sphere nor mod-p acyclic");
    return rep;
  }
  rep.add("hypothesis", true, point_case ? "X is mod-p acyclic" : "X is a mod-p homology " + std::to_string(*sx) + "-sphere");
  if (sx) rep.value("n", std::to_string(*sx));

  const auto fixed = fixed_complex(x);
  const GradedGroup hf = homology(fixed.chains, zp);
  std::size_t total = 0;
  for (int k = 0; k <= hf.top(); ++k) total += hf.rank(k);
  rep.value("H(X^G;Z/p)", detail::list_groups(hf.groups()));

  if (point_case) {
    const bool ok = !fixed.empty() && detail::all_zero(detail::reduced_betti(hf));
    rep.add("conclusion", ok, ok ? "X^G is mod-p acyclic" : "X^G is not mod-p acyclic");
    rep.add("rank identity", total == 1, "sum of mod-p Betti numbers of X^G = " + std::to_string(total));
  } else if (fixed.empty()) {
    rep.value("X^G", "empty");
    rep.add("conclusion", true, "X^G is empty");
    rep.add("rank identity", total == 0, "sum of mod-p Betti numbers of X^G = " + std::to_string(total));
  } else {
    const auto m = detail::sphere_degree(detail::reduced_betti(hf));
    if (m) {
      rep.value("m", std::to_string(*m));
      rep.value("X^G", "mod-p homology " + std::to_string(*m) + "-sphere");
    }
    rep.add("conclusion", m.has_value(), m ? "X^G has the mod-p homology of S^" + std::to_string(*m) : "X^G is not a mod-p homology sphere");
    rep.add("rank identity", total == 2, "sum of mod-p Betti numbers of X^G = " + std::to_string(total));
    if (m && sx) rep.value("m <= n", *m <= *sx ? "yes" : "no");
  }
  // For r < 0 every row of page I lies below t = 0, so S_r has the total
  // mod-p Betti number of X^G.
  const auto s = s_groups(x, zp, -2, -1);
  bool cross = true;
  for (const auto& g : s) cross = cross && g.dimension() == total;
  rep.add("S_r(G,X;Z/p) for r = -2, -1", cross, "dimensions " + detail::list_groups(s));
  return rep;
}

// Conner's theorem for G = Z/p: a Z-acyclic X has a Z-acyclic quotient.
// Throws InapplicableHypothesis when X is not Z-acyclic.
inline Report conner_check(const EquivariantChainComplex& x, int depth = 7) {
  const std::int64_t p = detail::prime_order(x);
  const GradedGroup hx = homology(x.chains);
  bool acyclic = hx.top() >= 0 && hx.group(0) == AbelianGroup::free(1);
  for (int k = 1; k <= hx.top(); ++k) acyclic = acyclic && hx.group(k).is_trivial();
  if (!acyclic) throw Error(ErrorCode::InapplicableHypothesis, "X is not Z-acyclic: H(X;Z) = " + detail::list_groups(hx.groups()));

  Report rep;
  rep.title = "Conner conjecture for Z/" + std::to_string(p);
  rep.add("hypothesis", true, "X is Z-acyclic");

  const auto co = coinvariant_complex(x);
  const auto inv = invariant_complex(x);
  const GradedGroup hq = homology(co.chains);
  rep.value("H(X/G;Z)", detail::list_groups(hq.groups()));
  bool q_ok = hq.group(0) == AbelianGroup::free(1);
  for (int k = 1; k <= hq.top(); ++k) q_ok = q_ok && hq.group(k).is_trivial();
  rep.add("conclusion: X/G is Z-acyclic", q_ok);

  const auto s = s_groups(x, Coefficients::integers(), -depth, 1);
  std::vector<std::string> bad;
  for (int n = -depth; n <= 1; ++n) {
    const auto& g = s[static_cast<std::size_t>(n + depth)];
    AbelianGroup want;
    if (n == 0) want = AbelianGroup::free(1);
    else if (n < 0 && n % 2 == 0) want = AbelianGroup::cyclic(p);
    if (!(g == want)) bad.push_back("S_" + std::to_string(n) + " = " + g.to_string() + ", expected " + want.to_string());
  }
  rep.value("S_n(G,X;Z) for n = " + std::to_string(-depth) + "..1", detail::list_groups(s));
  rep.add("S_n pattern", bad.empty(), "", bad);

  const GradedGroup hg = homology(inv.chains);
  rep.value("H(G,X;Z)", detail::list_groups(hg.groups()));
  bool g_ok = hg.group(0) == AbelianGroup::free(1);
  for (int k = 1; k <= hg.top(); ++k) g_ok = g_ok && hg.group(k).is_trivial();
  rep.add("H_n(G,X;Z) = 0 for n > 0 and H_0(G,X;Z) = Z", g_ok);

  const auto n0 = induced_map(norm_map(x, co, inv), hq, hg);
  bool n_ok = false;
  if (!n0.empty()) {
    const auto a = hom_on_presentations(n0[0]);
    n_ok = a.injective() && a.cokernel == AbelianGroup::cyclic(p);
    rep.value("coker(H_0(X/G) -> H_0(G,X))", a.cokernel.to_string());
  }
  rep.add("H_0(X/G;Z) = Z embeds in H_0(G,X;Z) with cokernel Z/p", n_ok);
  return rep;
}

// For a prime l not dividing |G|: H(G,X;Z/l) = H(X;Z/l)^G degreewise.
inline Report coprime_check(const EquivariantChainComplex& x, std::int64_t l) {
  if (!is_prime(l)) throw Error(ErrorCode::CompositeModulus, "coefficient " + std::to_string(l) + " is not prime");
  if (static_cast<std::int64_t>(x.group.order()) % l == 0)
    throw Error(ErrorCode::NotCoprime, std::to_string(l) + " divides the group order " + std::to_string(x.group.order()));
  const Coefficients c = Coefficients::mod(l);
  const auto lhs = homology(invariant_complex(x).chains, c).groups();
  const auto rhs = invariant_homology(x, c).groups();
  Report rep;
  rep.title = "coprime coefficients Z/" + std::to_string(l);
  rep.value("H(G,X;Z/l)", detail::list_groups(lhs));
  rep.value("H(X;Z/l)^G", detail::list_groups(rhs));
  std::vector<std::string> bad;
  const std::size_t n = std::max(lhs.size(), rhs.size());
  for (std::size_t k = 0; k < n; ++k) {
    const AbelianGroup a = k < lhs.size() ? lhs[k] : AbelianGroup{};
    const AbelianGroup b = k < rhs.size() ? rhs[k] : AbelianGroup{};
    if (!(a == b)) bad.push_back("degree " + std::to_string(k) + ": " + a.to_string() + " vs " + b.to_string());
  }
  rep.add("degreewise isomorphism", bad.empty(), "", bad);
  return rep;
}

// For a free action the norm map is an isomorphism on homology.
inline Report free_action_check(const EquivariantChainComplex& x) {
  if (!x.is_free()) throw Error(ErrorCode::NotFree, "some nontrivial element fixes a cell");
  const auto co = coinvariant_complex(x);
  const auto inv = invariant_complex(x);
  const GradedGroup hq = homology(co.chains);
  const GradedGroup hg = homology(inv.chains);
  const auto maps = induced_map(norm_map(x, co, inv), hq, hg);
  Report rep;
  rep.title = "free action: norm map on homology";
  rep.value("H(X/G;Z)", detail::list_groups(hq.groups()));
  rep.value("H(G,X;Z)", detail::list_groups(hg.groups()));
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < maps.size(); ++k)
    if (!hom_on_presentations(maps[k]).isomorphism()) bad.push_back("degree " + std::to_string(k));
  rep.add("N_* is an isomorphism in every degree", bad.empty(), "", bad);
  return rep;
}

}  // namespace equichain
