// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "support.hpp"

#include <exception>
#include <functional>
#include <iostream>
#include <sstream>

using namespace equichain;

namespace {

const AbelianGroup Z = AbelianGroup::free(1);
const AbelianGroup O{};
constexpr std::size_t kFuzz = 500;

using Groups = std::vector<AbelianGroup>;

// Collects failed expectations for one criterion.
class Probe {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  template <class A, class B>
  void expect_eq(const A& a, const B& b, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << a << ", want " << b;
    expect(a == b, os.str());
  }
  const std::vector<std::string>& failures() const { return failures_; }
  std::size_t checks() const { return checks_; }

 private:
  std::vector<std::string> failures_;
  std::size_t checks_ = 0;
};

std::string show(const Groups& gs) {
  std::string s = "(";
  for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? ", " : "") + gs[i].to_string();
  return s + ")";
}

std::int64_t order_of(const EquivariantChainComplex& x) { return static_cast<std::int64_t>(x.group.order()); }

Groups invariant_groups(const EquivariantChainComplex& x, const Coefficients& c = Coefficients::integers()) {
  return homology(invariant_complex(x).chains, c).groups();
}

const GroupHom& map_from(const LongExactSequence& les, LesColumn c, int n) { return les.map_from(c, n); }

std::string value(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.values)
    if (k == key) return v;
  return "<missing>";
}

std::vector<std::uint64_t> fuzz_seeds() {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < kFuzz; ++i) out.push_back(oracle::fuzz_seed() + i);
  return out;
}

// Builtins plus the fuzz corpus, labelled.
template <class F>
void over_corpus(F&& f) {
  for (const auto& name : oracle::prime_order_builtins()) f(name, spaces::parse_builtin(name));
  for (auto s : fuzz_seeds()) f("fuzz:" + std::to_string(s), spaces::fuzz(s));
}

void criterion1(Probe& t) {
  const auto x = spaces::circle_reflection();
  t.expect_eq(show(invariant_groups(x)), show({AbelianGroup{1, {2}}, O}), "H(G,X;Z)");
  const auto les = build_les(x);
  const auto& n0 = map_from(les, LesColumn::quotient, 0);
  // H_0(G,X) = Z/2 + Z, generators torsion first; [v1] is the free generator.
  t.expect_eq(n0.codomain.generators, 2u, "H_0(G,X) generators");
  t.expect(n0.matrix == (IntMatrix{{0}, {2}}), "[v1 bar] maps to 2[v1]");
  t.expect(check_exact(les).passed(), "exactness");
}

void criterion2(Probe& t) {
  for (std::int64_t p : {2, 3, 5}) {
    const auto x = spaces::circle_rotation(p);
    const auto tag = "p=" + std::to_string(p);
    t.expect_eq(show(invariant_groups(x)), show({Z, Z}), tag);
    const auto les = build_les(x);
    for (int n = 0; n <= 1; ++n)
      t.expect(hom_on_presentations(map_from(les, LesColumn::quotient, n)).isomorphism(), tag + " norm iso in degree " + std::to_string(n));
  }
}

void criterion3(Probe& t) {
  const auto x = spaces::sphere_reflection();
  t.expect_eq(show(invariant_groups(x)), show({Z, AbelianGroup::cyclic(2), O}), "H(G,X;Z)");
  const auto les = build_les(x);
  const auto& id = map_from(les, LesColumn::invariant, 1);
  t.expect(id.matrix == IntMatrix{{1}} && hom_on_presentations(id).isomorphism(), "H_1(G,X) -> H_1(X^G;Z/2) is the identity");
  t.expect(map_from(les, LesColumn::quotient, 0).matrix == IntMatrix{{2}}, "H_0(X/G) -> H_0(G,X) is multiplication by 2");
  t.expect(check_exact(les).passed(), "exactness");
}

void criterion4(Probe& t) {
  over_corpus([&](const std::string& name, const EquivariantChainComplex& x) {
    const auto d = quotient_D(x);
    t.expect(compare_with_fixed(x, d).chain_isomorphism(), name + ": D is not C(X^G;Z/p)");
    for (int k = 0; k <= x.top(); ++k) {
      const auto& g = d.groups[static_cast<std::size_t>(k)];
      const std::size_t dim = g.generators - oracle::rank_mod(g.relations, order_of(x));
      t.expect(oracle::rank_q(g.relations) == g.generators && dim == x.fixed_cells(k).size(), name + ": dim D_" + std::to_string(k));
    }
  });
}

void criterion5(Probe& t) {
  over_corpus([&](const std::string& name, const EquivariantChainComplex& x) {
    const auto les = build_les(x);
    const auto r = check_exact(les);
    t.expect(r.passed() && r.checks.size() + 1 == les.terms.size(), name + ": not exact");
  });
}

void criterion6(Probe& t) {
  over_corpus([&](const std::string& name, const EquivariantChainComplex& x) {
    t.expect(i_star(x).kernel_annihilated(), name + ": |G| ker i_* != 0");
  });
}

void criterion7(Probe& t) {
  for (std::int64_t n = 1; n <= 4; ++n) {
    const auto x = spaces::cross_polytope_sphere(n, spaces::CrossAction::antipodal);
    const auto hg = invariant_groups(x);
    t.expect_eq(show(hg), show(homology(coinvariant_complex(x).chains).groups()), "antipodal S^" + std::to_string(n));
    t.expect(free_action_check(x).passed(), "free_action_check on S^" + std::to_string(n));
    if (n == 2) t.expect_eq(show(hg), show({Z, AbelianGroup::cyclic(2), O}), "antipodal S^2");
  }
  for (std::int64_t p : {2, 3, 5}) {
    const auto x = spaces::lens_sphere(p);
    t.expect_eq(show(invariant_groups(x)), show({Z, AbelianGroup::cyclic(p), O, Z}), "lens p=" + std::to_string(p));
    t.expect(free_action_check(x).passed(), "free_action_check on lens p=" + std::to_string(p));
  }
}

void criterion8(Probe& t) {
  const auto sr = coprime_check(spaces::sphere_reflection(), 3);
  t.expect(sr.passed(), "sphere_reflection l=3");
  t.expect_eq(value(sr, "H(G,X;Z/l)"), std::string("(Z/3, 0, 0)"), "sphere_reflection over Z/3");
  // Hand computation: H(X;Z/3)^G for the reflected sphere.
  t.expect_eq(value(sr, "H(X;Z/l)^G"), std::string("(Z/3, 0, 0)"), "invariants of H(S^2;Z/3)");
  for (std::int64_t l : {3, 5}) t.expect(coprime_check(spaces::circle_reflection(), l).passed(), "circle_reflection l=" + std::to_string(l));
  const auto rot = coprime_check(spaces::circle_rotation(3), 2);
  t.expect(rot.passed(), "circle_rotation(3) l=2");
  t.expect_eq(value(rot, "H(G,X;Z/l)"), std::string("(Z/2, Z/2)"), "circle_rotation(3) over Z/2");
}

void criterion9(Probe& t) {
  over_corpus([&](const std::string& name, const EquivariantChainComplex& x) {
    const auto p = order_of(x);
    t.expect(collapse_check(x, p).passed(), name + ": E2 != Einf");
    const int d = x.top();
    FilteredTotal ft(x, p, Filtration::I);
    const auto inf = ft.e_infinity(d + 3);
    // Einf from the filtration of H(Tot) must agree with late pages and with the total dimensions.
    t.expect(inf.dims == ft.page(d + 5, d + 3).dims, name + ": Einf differs from a late page");
    const TotalComplex tot(x);
    for (int n = -2; n <= d; ++n) {
      std::size_t total = 0;
      for (int a = inf.p_min; a <= inf.p_max; ++a) total += inf.dim(a, n - a);
      const std::size_t want = tot.size(n) - oracle::rank_mod(tot.differential(n), p) - oracle::rank_mod(tot.differential(n + 1), p);
      t.expect(total == want, name + ": Einf total in degree " + std::to_string(n));
    }
  });
}

void criterion10(Probe& t) {
  struct Case {
    std::string name, fixed;
  };
  std::vector<Case> cases{{"sphere_reflection", "mod-p homology 1-sphere"}, {"circle_reflection", "mod-p homology 0-sphere"}};
  for (const std::string n : {"circle_rotation:2", "circle_rotation:3", "circle_rotation:5"}) cases.push_back({n, "empty"});
  for (int n = 1; n <= 4; ++n) cases.push_back({"cross_polytope_sphere:" + std::to_string(n) + ":antipodal", "empty"});
  for (const std::string n : {"lens_sphere:2", "lens_sphere:3", "lens_sphere:5"}) cases.push_back({n, "empty"});
  for (const auto& c : cases) {
    const auto x = spaces::parse_builtin(c.name);
    const auto r = smith_check(x);
    t.expect(r.passed() && r.applicable(), c.name + ": smith_check");
    t.expect_eq(value(r, "X^G"), c.fixed, c.name + " X^G");
    const auto* rank = r.find("rank identity");
    t.expect(rank && rank->verdict == Verdict::pass, c.name + ": rank identity");
    std::size_t total = 0;
    for (auto b : oracle::betti_mod(fixed_complex(x).chains, order_of(x))) total += b;
    t.expect_eq(total, std::size_t{c.fixed == "empty" ? 0u : 2u}, c.name + " sum of fixed mod-p Betti numbers");
  }
}

void criterion11(Probe& t) {
  std::vector<std::pair<std::string, std::int64_t>> cases;
  for (std::int64_t p : {2, 3, 5}) cases.push_back({"cone_of:circle_rotation:" + std::to_string(p), p});
  for (int n = 1; n <= 3; ++n) cases.push_back({"cone_of:cross_polytope_sphere:" + std::to_string(n) + ":antipodal", 2});
  for (const auto& [name, p] : cases) {
    const auto x = spaces::parse_builtin(name);
    const auto r = conner_check(x);
    t.expect(r.passed(), name + ": conner_check");
    const auto s = s_groups(x, Coefficients::integers(), -6, 0);
    for (int n = -6; n <= 0; ++n) {
      const auto want = n == 0 ? Z : (n % 2 == 0 ? AbelianGroup::cyclic(p) : O);
      t.expect_eq(s[static_cast<std::size_t>(n + 6)].to_string(), want.to_string(), name + " S_" + std::to_string(n));
    }
    const auto hg = invariant_groups(x);
    for (std::size_t k = 0; k < hg.size(); ++k) t.expect(hg[k] == (k == 0 ? Z : O), name + ": H_" + std::to_string(k) + "(G,X;Z)");
    t.expect_eq(homology(coinvariant_complex(x).chains).group(0).to_string(), Z.to_string(), name + " H_0(X/G)");
  }
}

void criterion12(Probe& t) {
  const auto h = invariant_groups(spaces::cp1_conjugation(), Coefficients::mod(2));
  t.expect_eq(h.at(1).to_string(), std::string("Z/2"), "H_1(G,CP1;Z/2)");
  t.expect_eq(h.at(2).to_string(), std::string("Z/2"), "H_2(G,CP1;Z/2)");
  // (Z/2)^{n+1-i} at n = 1, i = 1.
  t.expect_eq(h.at(1).dimension(), std::size_t{1}, "dimension formula");
}

void criterion13(Probe& t) {
  auto consistent = [&](const std::string& name, const ChainComplex& c) {
    const auto hz = homology(c);
    const auto hq = homology(c, Coefficients::rationals());
    const auto betti = oracle::betti_q(c);
    for (std::int64_t p : {2, 3, 5}) {
      const auto hp = homology(c, Coefficients::mod(p));
      const auto dims = oracle::betti_mod(c, p);
      for (int k = 0; k <= c.top(); ++k) {
        const std::size_t below = k > 0 ? hz.group(k - 1).p_torsion_count(p) : 0;
        const std::size_t uct = hz.group(k).free_rank + hz.group(k).p_torsion_count(p) + below;
        const auto dim = hp.group(k).dimension();
        t.expect(dim == uct && dim == dims[static_cast<std::size_t>(k)], name + ": mod " + std::to_string(p) + " degree " + std::to_string(k));
      }
    }
    for (int k = 0; k <= c.top(); ++k)
      t.expect(hq.rank(k) == betti[static_cast<std::size_t>(k)] && hq.rank(k) == hz.group(k).free_rank, name + ": Q-rank degree " + std::to_string(k));
  };
  auto all = [&](const std::string& name, const EquivariantChainComplex& x) {
    consistent(name + " X", x.chains);
    consistent(name + " invariant", invariant_complex(x).chains);
    consistent(name + " fixed", fixed_complex(x).chains);
    if (order_of(x) > 1 && is_prime(order_of(x))) consistent(name + " coinvariant", coinvariant_complex(x).chains);
  };
  for (const auto& name : spaces::builtin_corpus()) all(name, spaces::parse_builtin(name));
  for (std::size_t i = 0; i < 100; ++i) {
    const auto s = oracle::fuzz_seed() + i;
    all("fuzz:" + std::to_string(s), spaces::fuzz(s));
  }
}

void criterion14(Probe& t) {
  for (const auto& name : spaces::builtin_corpus()) {
    const auto k = spaces::parse_builtin_simplicial(name);
    if (!k) continue;
    const auto x = to_chain_complex(*k);
    const auto y = to_chain_complex(barycentric_subdivision(*k));
    t.expect_eq(show(invariant_groups(y)), show(invariant_groups(x)), name);
    for (std::int64_t p : {2, 3})
      t.expect_eq(show(invariant_groups(y, Coefficients::mod(p))), show(invariant_groups(x, Coefficients::mod(p))), name + " mod " + std::to_string(p));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Probe&)>>> criteria{
      {"circle_reflection: H_1 = 0, H_0 = Z + Z/2, H_0 junction [v1 bar] -> 2[v1]", criterion1},
      {"circle_rotation(p), p in {2,3,5}: H_1 = H_0 = Z, norm maps are isomorphisms", criterion2},
      {"sphere_reflection: H = (Z, Z/2, 0), LES identity and x2 junction maps", criterion3},
      {"D(X) = C(X^G;Z/p) as chain complexes: builtins + 500 fuzzed", criterion4},
      {"LES exact at every junction: builtins + 500 fuzzed", criterion5},
      {"|G| kills ker i_*: builtins + 500 fuzzed", criterion6},
      {"free actions: antipodal S^n (n <= 4) vs coinvariants, lens spaces (Z, Z/p, 0, Z)", criterion7},
      {"coprime coefficients: H(G,X;Z/l) = H(X;Z/l)^G", criterion8},
      {"page I collapses at E2 over Z/p: builtins + 500 fuzzed, Einf from the filtration of H(Tot)", criterion9},
      {"Smith: fixed sets of mod-p spheres, rank identity", criterion10},
      {"Conner: acyclic cones, S_n pattern down to -6, acyclic quotient", criterion11},
      {"cp1_conjugation over Z/2: H_1 = H_2 = Z/2", criterion12},
      {"universal coefficients and Q-rank consistency", criterion13},
      {"subdivision invariance of H(G, sd K)", criterion14},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Probe t;
    std::string error;
    try {
      criteria[i].second(t);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && t.failures().empty();
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first << " [" << t.checks() << " checks]\n";
    if (!error.empty()) std::cout << "    error: " << error << "\n";
    for (std::size_t j = 0; j < t.failures().size() && j < 5; ++j) std::cout << "    " << t.failures()[j] << "\n";
  }
  return failed == 0 ? 0 : 1;
}
