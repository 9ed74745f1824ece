#include "gradlie/graded.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gradlie/modrep.hpp"

namespace gradlie {

GradedLieAlgebra::GradedLieAlgebra(LieAlgebraFp a, std::vector<int> deg)
    : alg(std::move(a)), degree(std::move(deg)) {
  if (degree.size() != alg.dim)
    throw std::invalid_argument("GradedLieAlgebra: one degree per basis vector required");
}

int GradedLieAlgebra::min_degree() const {
  return degree.empty() ? 0 : *std::min_element(degree.begin(), degree.end());
}

int GradedLieAlgebra::max_degree() const {
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

std::vector<u32> GradedLieAlgebra::indices_of_degree(int j) const {
  std::vector<u32> out;
  for (u32 i = 0; i < alg.dim; ++i)
    if (degree[i] == j) out.push_back(i);
  return out;
}

FpSubspace GradedLieAlgebra::component(int j) const { return degree_range(j, j); }

FpSubspace GradedLieAlgebra::degree_range(int lo, int hi) const {
  std::vector<Vec> gens;
  for (u32 i = 0; i < alg.dim; ++i)
    if (degree[i] >= lo && degree[i] <= hi) gens.push_back(alg.basis_vec(i));
  return FpSubspace::span(alg.p, alg.dim, gens);
}

std::optional<int> GradedLieAlgebra::degree_of(const Vec& v) const {
  std::optional<int> d;
  for (u32 i = 0; i < alg.dim; ++i) {
    if (v[i] == 0) continue;
    if (!d)
      d = degree[i];
    else if (*d != degree[i])
      return std::nullopt;
  }
  return d;
}

GradingReport check_grading(const GradedLieAlgebra& G) {
  GradingReport rep;
  rep.depth = G.depth();
  rep.height = G.height();
  for (const auto& [key, terms] : G.alg.table) {
    u32 i = (u32)(key / G.alg.dim), j = (u32)(key % G.alg.dim);
    int d = G.degree[i] + G.degree[j];
    for (const auto& [k, c] : terms) {
      (void)c;
      if (G.degree[k] != d) {
        rep.violations.push_back({i, j});
        break;
      }
    }
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  return rep;
}

std::optional<Vec> transitivity_witness(const GradedLieAlgebra& G) {
  FpSubspace gm1 = G.component(-1);
  FpSubspace zero = FpSubspace::zero(G.alg.p, G.alg.dim);
  for (int j = 0; j <= G.max_degree(); ++j) {
    FpSubspace gj = G.component(j);
    if (gj.is_zero()) continue;
    FpSubspace ker = bracket_preimage(gj, gm1, zero, G.alg);
    if (!ker.is_zero()) return ker.basis_row(0);
  }
  return std::nullopt;
}

bool check_transitivity(const GradedLieAlgebra& G) { return !transitivity_witness(G); }

std::optional<Vec> one_transitivity_witness(const GradedLieAlgebra& G) {
  FpSubspace g1 = G.component(1);
  FpSubspace zero = FpSubspace::zero(G.alg.p, G.alg.dim);
  for (int j = G.min_degree(); j <= 0; ++j) {
    FpSubspace gj = G.component(j);
    if (gj.is_zero()) continue;
    FpSubspace ker = bracket_preimage(gj, g1, zero, G.alg);
    if (!ker.is_zero()) return ker.basis_row(0);
  }
  return std::nullopt;
}

bool check_one_transitivity(const GradedLieAlgebra& G) { return !one_transitivity_witness(G); }

FpSubspace weisfeiler_radical(const GradedLieAlgebra& G) {
  FpSubspace gneg = G.negative_part();
  FpSubspace gpos = G.positive_part();
  FpSubspace M = FpSubspace::zero(G.alg.p, G.alg.dim);
  while (true) {
    FpSubspace next = bracket_preimage(gneg, gpos, M, G.alg);
    if (next == M) return M;
    M = std::move(next);
  }
}

GradedLieAlgebra graded_quotient(const GradedLieAlgebra& G, const FpSubspace& I) {
  QuotientAlgebra Q = quotient_algebra(G.alg, I);
  std::vector<int> deg;
  deg.reserve(Q.alg.dim);
  for (const Vec& t : Q.transversal) {
    auto d = G.degree_of(t);
    if (!d) throw std::invalid_argument("graded_quotient: ideal is not graded");
    deg.push_back(*d);
  }
  return GradedLieAlgebra(std::move(Q.alg), std::move(deg));
}

/// Pairwise bracket closure of a spanning set: the subalgebra it generates.
FpSubspace subalgebra_generated(const FpSubspace& S, const LieAlgebraFp& L) {
  EchelonBuilder eb(L.p, L.dim);
  std::vector<Vec> elems;
  for (std::size_t i = 0; i < S.dim(); ++i) {
    Vec v = S.basis_row(i);
    if (eb.insert(v)) elems.push_back(std::move(v));
  }
  for (std::size_t i = 1; i < elems.size() && !eb.full(); ++i) {
    for (std::size_t j = 0; j < i && !eb.full(); ++j) {
      Vec w = L.bracket(elems[i], elems[j]);
      Vec res = eb.reduce(std::move(w));
      if (!vec_is_zero(res) && eb.insert(res)) elems.push_back(std::move(res));
    }
  }
  return FpSubspace::from_builder(eb);
}

/// Wraps a bracket-closed graded subspace as a GradedLieAlgebra on its own
/// canonical basis (rows of a graded subspace are homogeneous).
GradedLieAlgebra graded_subalgebra(const FpSubspace& S, const GradedLieAlgebra& G) {
  LieAlgebraFp sub = subalgebra_table(S, G.alg);
  std::vector<int> deg;
  deg.reserve(sub.dim);
  for (std::size_t i = 0; i < S.dim(); ++i) {
    auto d = G.degree_of(S.basis_row(i));
    if (!d) throw std::invalid_argument("graded_subalgebra: basis row not homogeneous");
    deg.push_back(*d);
  }
  return GradedLieAlgebra(std::move(sub), std::move(deg));
}

MinimalIdealResult minimal_ideal(const GradedLieAlgebra& G) {
  const int q = G.depth();
  if (q < 1) throw HypothesesNotMet("minimal_ideal: no negative component");
  if (!check_transitivity(G)) throw HypothesesNotMet("minimal_ideal: not transitive");
  if (!weisfeiler_radical(G).is_zero())
    throw HypothesesNotMet("minimal_ideal: nonzero radical");
  FpSubspace gm1 = G.component(-1);
  for (int i = 2; i <= q; ++i)
    if (G.component(-i) != product_space(G.component(-i + 1), gm1, G.alg))
      throw HypothesesNotMet("minimal_ideal: negative part not generated by the -1 component");
  if (!is_irreducible(G.component(0), gm1, G.alg))
    throw HypothesesNotMet("minimal_ideal: -1 component not irreducible");

  FpSubspace I = ideal_generated(G.component(-q), G.alg);
  if (!I.contains(G.negative_part()))
    throw std::logic_error("minimal_ideal: closure misses the negative part");
  int top = G.min_degree();
  for (std::size_t i = 0; i < I.dim(); ++i) {
    auto d = G.degree_of(I.basis_row(i));
    if (!d) throw std::logic_error("minimal_ideal: closure not graded");
    top = std::max(top, *d);
  }
  return {std::move(I), top};
}

GradedLieAlgebra quotient_construction(const GradedLieAlgebra& G, const FpSubspace& V, int t) {
  if (t < 1) throw std::invalid_argument("quotient_construction: t must be positive");
  if (V.is_zero()) throw std::invalid_argument("quotient_construction: V is zero");
  bool negative_side;
  if (G.component(-t).contains(V))
    negative_side = true;
  else if (G.component(t).contains(V))
    negative_side = false;
  else
    throw std::invalid_argument("quotient_construction: V not inside a degree +-t component");
  FpSubspace g0 = G.component(0);
  if (!V.contains(product_space(g0, V, G.alg)))
    throw std::invalid_argument("quotient_construction: V is not a degree-0 submodule");

  // Components F_s by original degree: the chain generated by V on its own
  // side, all multiples of t on the other side (and degree 0).
  std::map<int, FpSubspace> F;
  const int sign = negative_side ? -1 : 1;
  F[sign * t] = V;
  for (int i = 2;; ++i) {
    FpSubspace next = product_space(V, F.at(sign * (i - 1) * t), G.alg);
    if (next.is_zero()) break;
    F[sign * i * t] = std::move(next);
  }
  const int other_reach = negative_side ? G.height() : G.depth();
  for (int i = 0; i * t <= other_reach; ++i) {
    FpSubspace c = G.component(-sign * i * t);
    if (!c.is_zero()) F[-sign * i * t] = std::move(c);
  }

  // Annihilator chain on the side opposite V.
  FpSubspace zero = FpSubspace::zero(G.alg.p, G.alg.dim);
  std::vector<FpSubspace> A;
  FpSubspace prev = zero;
  for (int i = 0; i * t <= other_reach; ++i) {
    auto it = F.find(-sign * i * t);
    if (it == F.end()) {
      prev = zero;
      continue;
    }
    FpSubspace Ai = bracket_preimage(it->second, V, prev, G.alg);
    prev = Ai;
    if (!Ai.is_zero()) A.push_back(std::move(Ai));
  }

  FpSubspace Ftotal = zero;
  for (const auto& [d, sub] : F) {
    (void)d;
    Ftotal = subspace_sum(Ftotal, sub);
  }
  FpSubspace Atotal = zero;
  for (const FpSubspace& Ai : A) Atotal = subspace_sum(Atotal, Ai);

  GradedLieAlgebra Fsub = graded_subalgebra(Ftotal, G);
  // Regrade so V sits in degree -1: divide by t, flipping when V is positive.
  for (int& d : Fsub.degree) d = -sign * (d / t);
  // Express the annihilator in the subalgebra's coordinates.
  std::vector<Vec> arows;
  for (std::size_t i = 0; i < Atotal.dim(); ++i) {
    auto co = Ftotal.coordinates(Atotal.basis_row(i));
    if (!co) throw std::logic_error("quotient_construction: annihilator escaped the subalgebra");
    arows.push_back(std::move(*co));
  }
  FpSubspace Asub = FpSubspace::span(G.alg.p, Fsub.alg.dim, arows);

  GradedLieAlgebra B = graded_quotient(Fsub, Asub);
  if (!check_transitivity(B))
    throw std::logic_error("quotient_construction: output failed transitivity");
  return B;
}

GradedLieAlgebra local_subalgebra(const GradedLieAlgebra& G) {
  FpSubspace seed = G.degree_range(-1, 1);
  return graded_subalgebra(subalgebra_generated(seed, G.alg), G);
}

PCharacter p_character(const GradedLieAlgebra& G, const FpSubspace& domain,
                       const std::vector<Vec>& powers) {
  const u32 p = G.alg.p;
  if (powers.size() != domain.dim())
    throw std::invalid_argument("p_character: one p-th power per domain basis row required");
  const int q = G.depth();
  PCharacter out;
  out.domain = domain;
  out.chi.assign(domain.dim(), 0);

  // Scalar c_x on a component: (ad x)^p - ad x^[p] restricted there.
  auto scalar_on = [&](const Vec& x, const Vec& power, int j) -> std::optional<u32> {
    SparseMat adx = G.alg.ad(x);
    std::optional<u32> c;
    for (u32 m : G.indices_of_degree(j)) {
      Vec w = G.alg.basis_vec(m);
      for (u32 step = 0; step < p; ++step) w = adx.apply(w);
      vec_axpy(w, p - 1, G.alg.bracket(power, G.alg.basis_vec(m)), p);
      u32 diag = w[m];
      w[m] = 0;
      if (!vec_is_zero(w)) return std::nullopt;
      if (!c)
        c = diag;
      else if (*c != diag)
        return std::nullopt;
    }
    return c ? c : std::optional<u32>(0);
  };

  for (std::size_t i = 0; i < domain.dim(); ++i) {
    auto c = scalar_on(domain.basis_row(i), powers[i], -1);
    if (!c)
      throw NotScalar("p_character: twisted p-th power is not scalar on the -1 component");
    out.chi[i] = *c;  // chi(x)^p = c and the Frobenius fixes F_p pointwise
  }

  FpSubspace gm1 = G.component(-1);
  for (int j = 2; j <= q; ++j) {
    ScalingCheck sc{j, false, false};
    sc.applicable =
        G.component(-j) == product_space(G.component(-j + 1), gm1, G.alg);
    if (sc.applicable) {
      sc.ok = true;
      for (std::size_t i = 0; i < domain.dim() && sc.ok; ++i) {
        auto c = scalar_on(domain.basis_row(i), powers[i], -j);
        sc.ok = c && *c == fp_mul((u32)(j % p), out.chi[i], p);
      }
    }
    out.scaling.push_back(sc);
  }
  return out;
}

PCharacter p_character(const GradedLieAlgebra& G, const FpSubspace& domain) {
  std::vector<Vec> powers;
  powers.reserve(domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    PPowerResult r = adjoint_p_power(domain.basis_row(i), G.alg);
    if (r.status != PPowerResult::Status::Ok)
      throw HypothesesNotMet("p_character: p-th power of a domain basis element is not inner");
    powers.push_back(std::move(r.y));
  }
  return p_character(G, domain, powers);
}

}  // namespace gradlie
