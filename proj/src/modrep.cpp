#include "gradlie/modrep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "gradlie/rootsystem.hpp"

namespace gradlie {

ModuleAction restrict_action(const FpSubspace& acting, const FpSubspace& module,
                             const LieAlgebraFp& L) {
  ModuleAction act;
  act.p = L.p;
  act.module = module;
  const std::size_t k = module.dim();
  act.gens.reserve(acting.dim());
  for (std::size_t a = 0; a < acting.dim(); ++a) {
    Vec x = acting.basis_row(a);
    FpMatrix M(L.p, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vec image = L.bracket(x, module.basis_row(j));
      auto coords = module.coordinates(image);
      if (!coords) throw std::invalid_argument("restrict_action: subspace is not invariant");
      for (std::size_t i = 0; i < k; ++i) M.at(i, j) = (*coords)[i];
    }
    act.gens.push_back(std::move(M));
  }
  return act;
}

FpSubspace spin(const std::vector<FpMatrix>& gens, const Vec& seed, u32 p) {
  return spin(gens, FpSubspace::span(p, seed.size(), {seed}), p);
}

FpSubspace spin(const std::vector<FpMatrix>& gens, const FpSubspace& seed, u32 p) {
  const std::size_t k = seed.ambient;
  EchelonBuilder eb(p, k);
  std::vector<Vec> work;
  for (std::size_t i = 0; i < seed.dim(); ++i) {
    Vec v = seed.basis_row(i);
    if (eb.insert(v)) work.push_back(std::move(v));
  }
  while (!work.empty() && !eb.full()) {
    Vec v = std::move(work.back());
    work.pop_back();
    for (const FpMatrix& g : gens) {
      Vec w = g.apply(v);
      Vec res = eb.reduce(w);
      if (!vec_is_zero(res) && eb.insert(res)) {
        work.push_back(std::move(res));
        if (eb.full()) break;
      }
    }
  }
  return FpSubspace::from_builder(eb);
}

namespace {

std::vector<FpMatrix> transpose_all(const std::vector<FpMatrix>& gens) {
  std::vector<FpMatrix> out;
  out.reserve(gens.size());
  for (const FpMatrix& g : gens) out.push_back(g.transpose());
  return out;
}

}  // namespace

bool is_irreducible(const ModuleAction& act) {
  const std::size_t k = act.dim();
  const u32 p = act.p;
  if (k == 0) return false;
  if (k == 1) return true;

  std::vector<FpMatrix> pool;
  for (const FpMatrix& g : act.gens)
    if (!g.is_zero()) pool.push_back(g);
  if (pool.empty()) return false;  // zero action on dim >= 2: every line is a submodule

  std::vector<FpMatrix> dual = transpose_all(act.gens);
  std::mt19937 rng(0xA11CEu);
  auto random_pool_elt = [&]() -> const FpMatrix& { return pool[rng() % pool.size()]; };

  for (int attempt = 0; attempt < 400; ++attempt) {
    // Occasionally deepen the pool with products so that samples range over
    // the enveloping algebra, not just the linear span of the generators.
    if (pool.size() < 64 && attempt % 3 == 0)
      pool.push_back(random_pool_elt().mul(random_pool_elt()));
    FpMatrix theta(p, k, k);
    const int terms = 2 + (int)(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      const FpMatrix& m = random_pool_elt();
      u32 c = 1 + rng() % (p - 1);
      for (std::size_t i = 0; i < theta.a.size(); ++i)
        theta.a[i] = fp_add(theta.a[i], fp_mul(c, m.a[i], p), p);
    }
    // Scalar shifts stay inside the unital enveloping algebra, so every
    // eigenvalue of theta yields a candidate singular element.
    for (u32 lam = 0; lam < p; ++lam) {
      FpMatrix shifted = theta;
      for (std::size_t d = 0; d < k; ++d)
        shifted.at(d, d) = fp_sub(shifted.at(d, d), lam, p);
      FpSubspace ker = kernel(shifted);
      if (ker.dim() == 0) continue;
      // A kernel vector lying in a proper submodule certifies reducibility
      // regardless of the nullity.
      bool proper_spin = false;
      for (std::size_t i = 0; i < ker.dim(); ++i)
        if (spin(act.gens, ker.basis_row(i), p).dim() < k) {
          proper_spin = true;
          break;
        }
      if (proper_spin) return false;
      if (ker.dim() != 1) continue;  // Norton's converse needs nullity one
      FpSubspace dker = kernel(shifted.transpose());
      if (dker.dim() != 1) continue;
      if (spin(dual, dker.basis_row(0), p).dim() < k) return false;
      return true;
    }
  }

  // Small-module fallback: spin every nonzero vector.
  double total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= p;
  if (total <= 20000) {
    Vec v(k, 0);
    while (true) {
      std::size_t pos = 0;
      while (pos < k && v[pos] == p - 1) v[pos++] = 0;
      if (pos == k) break;
      ++v[pos];
      if (spin(act.gens, v, p).dim() < k) return false;
    }
    return true;
  }
  throw std::runtime_error("is_irreducible: no decisive singular element found");
}

bool is_irreducible(const FpSubspace& acting, const FpSubspace& module, const LieAlgebraFp& L) {
  return is_irreducible(restrict_action(acting, module, L));
}

namespace {

Vec unit_vec(std::size_t k, std::size_t j) {
  Vec v(k, 0);
  v[j] = 1;
  return v;
}

// Some proper nonzero invariant subspace (in the k local coordinates), or
// nullopt when the module is irreducible.
std::optional<FpSubspace> proper_submodule(const std::vector<FpMatrix>& gens, u32 p,
                                           std::size_t k) {
  if (k <= 1) return std::nullopt;
  auto proper = [&](const FpSubspace& S) { return S.dim() > 0 && S.dim() < k; };
  // Deterministic first pass: spins of the coordinate vectors.
  for (std::size_t j = 0; j < k; ++j) {
    FpSubspace S = spin(gens, unit_vec(k, j), p);
    if (proper(S)) return S;
  }
  std::vector<FpMatrix> pool;
  for (const FpMatrix& g : gens)
    if (!g.is_zero()) pool.push_back(g);
  if (pool.empty()) return std::nullopt;  // covered above for k >= 2

  std::mt19937 rng(0xC0FFEEu);
  auto random_pool_elt = [&]() -> const FpMatrix& { return pool[rng() % pool.size()]; };
  for (int attempt = 0; attempt < 300; ++attempt) {
    if (pool.size() < 64 && attempt % 3 == 0)
      pool.push_back(random_pool_elt().mul(random_pool_elt()));
    FpMatrix theta(p, k, k);
    const int terms = 2 + (int)(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      const FpMatrix& m = random_pool_elt();
      u32 c = 1 + rng() % (p - 1);
      for (std::size_t i = 0; i < theta.a.size(); ++i)
        theta.a[i] = fp_add(theta.a[i], fp_mul(c, m.a[i], p), p);
    }
    // Eigenvectors of theta for every eigenvalue in F_p are the natural
    // submodule seeds.
    for (u32 lam = 0; lam < p; ++lam) {
      FpMatrix shifted = theta;
      for (std::size_t d = 0; d < k; ++d) shifted.at(d, d) = fp_sub(shifted.at(d, d), lam, p);
      FpSubspace ker = kernel(shifted);
      for (std::size_t i = 0; i < ker.dim(); ++i) {
        FpSubspace S = spin(gens, ker.basis_row(i), p);
        if (proper(S)) return S;
      }
    }
  }
  double total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= p;
  if (total <= 20000) {
    Vec v(k, 0);
    while (true) {
      std::size_t pos = 0;
      while (pos < k && v[pos] == p - 1) v[pos++] = 0;
      if (pos == k) break;
      ++v[pos];
      FpSubspace S = spin(gens, v, p);
      if (proper(S)) return S;
    }
    return std::nullopt;
  }
  ModuleAction act;
  act.p = p;
  act.module = FpSubspace::full_space(p, k);
  act.gens = gens;
  if (is_irreducible(act)) return std::nullopt;
  throw std::runtime_error("proper_submodule: module is reducible but no submodule was found");
}

// Restriction of k-coordinate generator matrices to an invariant subspace.
std::vector<FpMatrix> restrict_gens(const std::vector<FpMatrix>& gens, const FpSubspace& S,
                                    u32 p) {
  const std::size_t m = S.dim();
  std::vector<FpMatrix> out;
  out.reserve(gens.size());
  for (const FpMatrix& g : gens) {
    FpMatrix M(p, m, m);
    for (std::size_t j = 0; j < m; ++j) {
      auto coords = S.coordinates(g.apply(S.basis_row(j)));
      if (!coords) throw std::logic_error("restrict_gens: subspace is not invariant");
      for (std::size_t i = 0; i < m; ++i) M.at(i, j) = (*coords)[i];
    }
    out.push_back(std::move(M));
  }
  return out;
}

// A minimal nonzero submodule, in the k local coordinates (k >= 1).
FpSubspace minimal_submodule(const std::vector<FpMatrix>& gens, u32 p, std::size_t k) {
  FpSubspace cur = FpSubspace::full_space(p, k);
  while (true) {
    std::vector<FpMatrix> curgens = restrict_gens(gens, cur, p);
    auto sub = proper_submodule(curgens, p, cur.dim());
    if (!sub) return cur;
    std::vector<Vec> lifted;
    for (std::size_t i = 0; i < sub->dim(); ++i) {
      Vec row = sub->basis_row(i);
      Vec v(k, 0);
      for (std::size_t j = 0; j < cur.dim(); ++j) vec_axpy(v, row[j], cur.basis_row(j), p);
      lifted.push_back(std::move(v));
    }
    cur = FpSubspace::span(p, k, lifted);
  }
}

}  // namespace

std::vector<FpSubspace> composition_series(const FpSubspace& acting, const FpSubspace& module,
                                           const LieAlgebraFp& L) {
  ModuleAction act = restrict_action(acting, module, L);
  const u32 p = L.p;
  const std::size_t k = act.dim();
  std::vector<FpSubspace> chain;
  FpSubspace S = FpSubspace::zero(p, k);
  while (S.dim() < k) {
    const std::size_t m = k - S.dim();
    std::vector<Vec> T = quotient_transversal(FpSubspace::full_space(p, k), S);
    // Change of basis: columns are the S basis followed by the transversal.
    FpMatrix C(p, k, k);
    for (std::size_t i = 0; i < S.dim(); ++i)
      for (std::size_t r = 0; r < k; ++r) C.at(r, i) = S.basis.at(i, r);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < k; ++r) C.at(r, S.dim() + j) = T[j][r];
    auto Cinv = inverse(C);
    if (!Cinv) throw std::logic_error("composition_series: degenerate transversal");
    auto tcoord = [&](const Vec& v) {
      Vec y = Cinv->apply(v);
      return Vec(y.begin() + (long)S.dim(), y.end());
    };
    std::vector<FpMatrix> qgens;
    for (const FpMatrix& g : act.gens) {
      FpMatrix M(p, m, m);
      for (std::size_t j = 0; j < m; ++j) {
        Vec col = tcoord(g.apply(T[j]));
        for (std::size_t i = 0; i < m; ++i) M.at(i, j) = col[i];
      }
      qgens.push_back(std::move(M));
    }
    FpSubspace sub = minimal_submodule(qgens, p, m);
    std::vector<Vec> gens_k = S.basis_rows();
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      Vec row = sub.basis_row(i);
      Vec v(k, 0);
      for (std::size_t j = 0; j < m; ++j) vec_axpy(v, row[j], T[j], p);
      gens_k.push_back(std::move(v));
    }
    S = FpSubspace::span(p, k, gens_k);
    std::vector<Vec> amb;
    for (std::size_t i = 0; i < S.dim(); ++i) {
      Vec row = S.basis_row(i);
      Vec v(module.ambient, 0);
      for (std::size_t j = 0; j < k; ++j) vec_axpy(v, row[j], module.basis_row(j), p);
      amb.push_back(std::move(v));
    }
    chain.push_back(FpSubspace::span(p, module.ambient, amb));
  }
  return chain;
}

ToralSubalgebra find_toral(const FpSubspace& g0, const LieAlgebraFp& L, u32 seed) {
  const u32 p = L.p;
  if (g0.is_zero()) return {g0};
  LieAlgebraFp G0 = subalgebra_table(g0, L);
  const std::size_t m = G0.dim;
  std::mt19937 rng(seed);
  auto lift = [&](const Vec& c) {
    Vec v(g0.ambient, 0);
    for (std::size_t j = 0; j < m; ++j) vec_axpy(v, c[j], g0.basis_row(j), p);
    return v;
  };
  // Solve ad(y) = (ad x)^p for any y (ignoring central ambiguity, which is
  // harmless for the Jordan-part iteration below).
  std::vector<FpMatrix> ads;
  for (std::size_t k = 0; k < m; ++k) ads.push_back(G0.ad(G0.basis_vec((u32)k)).to_dense());
  FpMatrix system(p, m * m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) system.at(i * m + j, k) = ads[k].at(i, j);
  auto p_power_any = [&](const Vec& x) -> std::optional<Vec> {
    FpMatrix A = G0.ad(x).to_dense().pow(p);
    Vec b(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b[i * m + j] = A.at(i, j);
    return solve(system, b);
  };
  // Grow the torus one split semisimple element at a time, always searching
  // inside the centralizer of what has been found so far. (A single Fitting
  // null does not suffice: a split Cartan can consist entirely of
  // non-regular elements, e.g. type G2 at p = 5.)
  for (int restart = 0; restart < 20; ++restart) {
    std::vector<Vec> torus;  // in G0 coordinates
    FpSubspace T = FpSubspace::zero(p, m);
    FpSubspace C = FpSubspace::full_space(p, m);
    int stale = 0;
    while (stale < 40 && T.dim() < C.dim()) {
      Vec x(m, 0);
      for (std::size_t i = 0; i < C.dim(); ++i)
        vec_axpy(x, rng() % p, C.basis_row(i), p);
      if (vec_is_zero(x)) {
        ++stale;
        continue;
      }
      // Jordan-part iteration: iterated p-th powers converge to the
      // semisimple part when the powers stay inner.
      for (std::size_t it = 0; it < m; ++it) {
        std::optional<Vec> y = p_power_any(x);
        if (!y || vec_is_zero(*y) || *y == x) break;
        x = std::move(*y);
      }
      if (vec_is_zero(x) || T.contains(x)) {
        ++stale;
        continue;
      }
      // The semisimple part may fail to split over the prime field (its
      // p-th powers then cycle instead of stabilizing). Summing one full
      // cycle applies the field trace eigenvalue-wise and lands back in the
      // split part of the torus it generates.
      {
        std::vector<Vec> cycle{x};
        for (std::size_t it = 0; it < 2 * m; ++it) {
          std::optional<Vec> y = p_power_any(cycle.back());
          if (!y) break;
          if (*y == cycle.front()) {
            if (cycle.size() > 1) {
              Vec s(m, 0);
              for (const Vec& c : cycle) s = vec_add(s, c, p);
              x = std::move(s);
            }
            break;
          }
          cycle.push_back(std::move(*y));
        }
      }
      if (vec_is_zero(x) || T.contains(x)) {
        ++stale;
        continue;
      }
      FpMatrix B = L.ad(lift(x)).to_dense();
      if (!(B.pow(p) == B)) {  // not diagonalizable with eigenvalues in F_p
        ++stale;
        continue;
      }
      torus.push_back(x);
      T = FpSubspace::span(p, m, torus);
      C = centralizer(T, G0);
      stale = 0;
    }
    if (T.dim() > 0 && T == C) {  // self-centralizing: a maximal torus
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < T.dim(); ++i) rows.push_back(lift(T.basis_row(i)));
      return {FpSubspace::span(p, g0.ambient, rows)};
    }
  }
  throw ToralNotFound("find_toral: no maximal torus found (input may not be reductive)");
}

const FpSubspace* WeightDecomposition::space_of(const Vec& w) const {
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] == w) return &spaces[i];
  return nullptr;
}

WeightDecomposition weight_decomposition(const FpSubspace& module, const ToralSubalgebra& t,
                                         const LieAlgebraFp& L) {
  ModuleAction act = restrict_action(t.carrier, module, L);
  const u32 p = L.p;
  const std::size_t k = act.dim();
  struct Item {
    Vec w;
    FpSubspace s;
  };
  std::vector<Item> items;
  if (k > 0) items.push_back({{}, FpSubspace::full_space(p, k)});
  for (const FpMatrix& A : act.gens) {
    std::vector<Item> next;
    for (const Item& it : items) {
      for (u32 lam = 0; lam < p; ++lam) {
        FpMatrix shifted = A;
        for (std::size_t d = 0; d < k; ++d)
          shifted.at(d, d) = fp_sub(shifted.at(d, d), lam, p);
        FpSubspace E = subspace_intersect(it.s, kernel(shifted));
        if (E.dim() > 0) {
          Vec w = it.w;
          w.push_back(lam);
          next.push_back({std::move(w), std::move(E)});
        }
      }
    }
    items = std::move(next);
  }
  WeightDecomposition wd;
  std::size_t covered = 0;
  for (Item& it : items) {
    covered += it.s.dim();
    std::vector<Vec> amb;
    for (std::size_t i = 0; i < it.s.dim(); ++i) {
      Vec row = it.s.basis_row(i);
      Vec v(module.ambient, 0);
      for (std::size_t j = 0; j < k; ++j) vec_axpy(v, row[j], module.basis_row(j), p);
      amb.push_back(std::move(v));
    }
    wd.weights.push_back(std::move(it.w));
    wd.spaces.push_back(FpSubspace::span(p, module.ambient, amb));
  }
  wd.residue_dim = k - covered;
  return wd;
}

std::vector<PrimitiveVector> primitive_vectors(const FpSubspace& module, const ToralSubalgebra& t,
                                               const FpSubspace& n_plus,
                                               const FpSubspace& n_minus, const LieAlgebraFp& L) {
  WeightDecomposition wd = weight_decomposition(module, t, L);
  const u32 p = L.p;
  std::vector<PrimitiveVector> out;
  auto collect = [&](const FpSubspace& N, PrimitiveSign sign) {
    for (std::size_t wi = 0; wi < wd.weights.size(); ++wi) {
      const FpSubspace& sp = wd.spaces[wi];
      const std::size_t d = sp.dim();
      FpMatrix M(p, N.dim() * L.dim, d);
      for (std::size_t a = 0; a < N.dim(); ++a) {
        Vec x = N.basis_row(a);
        for (std::size_t j = 0; j < d; ++j) {
          Vec img = L.bracket(x, sp.basis_row(j));
          for (std::size_t r = 0; r < L.dim; ++r) M.at(a * L.dim + r, j) = img[r];
        }
      }
      FpSubspace ker = kernel(M);
      for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec c = ker.basis_row(i);
        Vec v(module.ambient, 0);
        for (std::size_t j = 0; j < d; ++j) vec_axpy(v, c[j], sp.basis_row(j), p);
        out.push_back({std::move(v), sign, wd.weights[wi]});
      }
    }
  };
  collect(n_plus, PrimitiveSign::Plus);
  collect(n_minus, PrimitiveSign::Minus);
  return out;
}

namespace {

Vec weight_add(const Vec& a, const Vec& b, u32 p) { return vec_add(a, b, p); }
Vec weight_neg(const Vec& a, u32 p) {
  Vec r = a;
  for (auto& c : r) c = fp_neg(c, p);
  return r;
}

std::vector<Vec> nonzero_weights(const WeightDecomposition& wd) {
  std::vector<Vec> roots;
  for (std::size_t i = 0; i < wd.weights.size(); ++i) {
    if (vec_is_zero(wd.weights[i])) continue;
    if (wd.spaces[i].dim() != 1)
      throw RootSpaceNotOneDim("cartan_integers: a nonzero weight space has dimension > 1");
    roots.push_back(wd.weights[i]);
  }
  return roots;
}

int root_pairing_in(const std::vector<Vec>& roots, const Vec& beta, const Vec& alpha, u32 p) {
  if (beta == alpha) return 2;
  if (beta == weight_neg(alpha, p)) return -2;
  auto present = [&](const Vec& w) {
    return std::find(roots.begin(), roots.end(), w) != roots.end();
  };
  int d = 0, u = 0;
  Vec cur = beta;
  for (u32 s = 1; s < p; ++s) {
    cur = weight_add(cur, weight_neg(alpha, p), p);
    if (!present(cur)) break;
    if (s + 1 == p) throw NoPositiveSystem("root_pairing: full line of roots");
    ++d;
  }
  cur = beta;
  for (u32 s = 1; s < p; ++s) {
    cur = weight_add(cur, alpha, p);
    if (!present(cur)) break;
    if (s + 1 == p) throw NoPositiveSystem("root_pairing: full line of roots");
    ++u;
  }
  return d - u;
}

struct TypeRef {
  std::string name;
  std::vector<std::vector<int>> cartan;
};

const std::vector<TypeRef>& type_refs() {
  static const std::vector<TypeRef> refs = [] {
    std::vector<TypeRef> out;
    auto add = [&](SimpleType t, u32 rank, const std::string& name) {
      try {
        out.push_back({name, build_root_system(t, rank).cartan});
      } catch (const std::invalid_argument&) {
      }
    };
    for (u32 r = 1; r <= 4; ++r) add(SimpleType::A, r, "A" + std::to_string(r));
    for (u32 r = 2; r <= 4; ++r) add(SimpleType::C, r, "C" + std::to_string(r));
    for (u32 r = 2; r <= 4; ++r) add(SimpleType::B, r, "B" + std::to_string(r));
    add(SimpleType::D, 4, "D4");
    add(SimpleType::G, 2, "G2");
    add(SimpleType::F, 4, "F4");
    return out;
  }();
  return refs;
}

}  // namespace

int root_pairing(const WeightDecomposition& roots, const Vec& beta, const Vec& alpha, u32 p) {
  return root_pairing_in(nonzero_weights(roots), beta, alpha, p);
}

std::vector<std::vector<int>> cartan_integers(const WeightDecomposition& wd, u32 p) {
  std::vector<Vec> roots = nonzero_weights(wd);
  const std::size_t n = roots.size();
  std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = root_pairing_in(roots, roots[i], roots[j], p);
  return M;
}

RootBase find_base(const WeightDecomposition& wd, u32 p) {
  std::vector<Vec> roots = nonzero_weights(wd);
  std::sort(roots.begin(), roots.end());
  const std::size_t n = roots.size();
  std::map<Vec, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[roots[i]] = i;
  std::vector<std::size_t> negidx(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = index.find(weight_neg(roots[i], p));
    if (it == index.end())
      throw NoPositiveSystem("find_base: root set is not closed under negation");
    negidx[i] = it->second;
  }

  // sign[i] = +1 when root i is in P, -1 when -root i is, 0 unset.
  std::vector<int> sign(n, 0);
  auto assign = [&](std::size_t i, int s, std::vector<std::size_t>& trail) -> bool {
    std::vector<std::size_t> queue;
    auto set_one = [&](std::size_t j, int v) -> bool {
      if (sign[j] != 0) return sign[j] == v;
      sign[j] = v;
      sign[negidx[j]] = -v;
      trail.push_back(j);
      trail.push_back(negidx[j]);
      queue.push_back(j);
      queue.push_back(negidx[j]);
      return true;
    };
    if (!set_one(i, s)) return false;
    // Closure propagation: sums of positive roots must stay positive.
    while (!queue.empty()) {
      queue.pop_back();
      for (std::size_t a = 0; a < n; ++a) {
        if (sign[a] != 1) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
          if (sign[b] != 1) continue;
          auto it = index.find(weight_add(roots[a], roots[b], p));
          if (it == index.end()) continue;
          if (sign[it->second] == -1) return false;
          if (sign[it->second] == 0 && !set_one(it->second, 1)) return false;
        }
      }
    }
    return true;
  };
  auto undo = [&](std::vector<std::size_t>& trail) {
    for (std::size_t j : trail) sign[j] = 0;
  };
  std::function<bool()> solve = [&]() -> bool {
    std::size_t i = 0;
    while (i < n && sign[i] != 0) ++i;
    if (i == n) return true;
    for (int s : {1, -1}) {
      std::vector<std::size_t> trail;
      if (assign(i, s, trail) && solve()) return true;
      undo(trail);
    }
    return false;
  };
  if (n > 0 && !solve()) throw NoPositiveSystem("find_base: no positive system exists");

  RootBase rb;
  for (std::size_t i = 0; i < n; ++i)
    if (sign[i] == 1) rb.positive.push_back(roots[i]);
  for (const Vec& a : rb.positive) {
    bool is_sum = false;
    for (const Vec& b : rb.positive) {
      for (const Vec& c : rb.positive) {
        if (weight_add(b, c, p) == a) {
          is_sum = true;
          break;
        }
      }
      if (is_sum) break;
    }
    if (!is_sum) rb.base.push_back(a);
  }
  std::sort(rb.base.begin(), rb.base.end());
  const std::size_t r = rb.base.size();
  auto matrix_of = [&](const std::vector<Vec>& base) {
    std::vector<std::vector<int>> M(base.size(), std::vector<int>(base.size(), 0));
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j)
        M[i][j] = root_pairing_in(roots, base[i], base[j], p);
    return M;
  };
  rb.cartan = matrix_of(rb.base);
  // Match against the reference Cartan matrices, reordering the base to the
  // matched type's convention.
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  for (const TypeRef& ref : type_refs()) {
    if (ref.cartan.size() != r) continue;
    std::vector<std::size_t> q = perm;
    do {
      bool match = true;
      for (std::size_t i = 0; i < r && match; ++i)
        for (std::size_t j = 0; j < r && match; ++j)
          if (rb.cartan[q[i]][q[j]] != ref.cartan[i][j]) match = false;
      if (match) {
        std::vector<Vec> nb(r);
        for (std::size_t i = 0; i < r; ++i) nb[i] = rb.base[q[i]];
        rb.base = std::move(nb);
        rb.cartan = ref.cartan;
        rb.type = ref.name;
        return rb;
      }
    } while (std::next_permutation(q.begin(), q.end()));
  }
  return rb;
}

FundamentalWeightFrame weight_frame(const ToralSubalgebra& t, const std::vector<Vec>& simple_pos,
                                    const FpSubspace& g0, const LieAlgebraFp& L) {
  const u32 p = L.p;
  WeightDecomposition wd = weight_decomposition(g0, t, L);
  FundamentalWeightFrame frame;
  frame.t = t;
  for (const Vec& e : simple_pos) {
    // The root of e: eigenvalue tuple under the torus basis.
    Vec alpha;
    for (std::size_t a = 0; a < t.dim(); ++a) {
      Vec img = L.bracket(t.carrier.basis_row(a), e);
      // img = alpha_a * e
      u32 lam = 0;
      for (std::size_t r = 0; r < L.dim; ++r)
        if (e[r] != 0) {
          lam = fp_mul(img[r], fp_inv(e[r], p), p);
          break;
        }
      if (img != vec_scale(e, lam, p))
        throw std::invalid_argument("weight_frame: simple vector is not a root vector");
      alpha.push_back(lam);
    }
    const FpSubspace* opp = wd.space_of(weight_neg(alpha, p));
    if (!opp || opp->dim() != 1)
      throw RootSpaceNotOneDim("weight_frame: opposite root space is not a line");
    Vec f = opp->basis_row(0);
    Vec h = L.bracket(e, f);
    auto hc = t.carrier.coordinates(h);
    if (!hc) throw std::invalid_argument("weight_frame: [e, f] is not in the torus");
    // alpha(h) must be nonzero; scale so that alpha(h) = 2.
    u32 ah = 0;
    for (std::size_t a = 0; a < t.dim(); ++a) ah = fp_add(ah, fp_mul((*hc)[a], alpha[a], p), p);
    if (ah == 0) throw std::invalid_argument("weight_frame: degenerate coroot");
    frame.coroot_coords.push_back(vec_scale(*hc, fp_mul(2, fp_inv(ah, p), p), p));
  }
  return frame;
}

Vec fundamental_coords(const FundamentalWeightFrame& frame, const Vec& weight, u32 p) {
  Vec out;
  for (const Vec& h : frame.coroot_coords) {
    u32 c = 0;
    for (std::size_t a = 0; a < h.size(); ++a) c = fp_add(c, fp_mul(h[a], weight[a], p), p);
    out.push_back(c);
  }
  return out;
}

namespace {

// Dynkin type of a subalgebra given by its own structure table (acting on
// itself adjointly); empty string when unidentified.
std::string adjoint_type(const LieAlgebraFp& A, u32 seed) {
  ToralSubalgebra t = find_toral(FpSubspace::full_space(A.p, A.dim), A, seed);
  WeightDecomposition wd = weight_decomposition(FpSubspace::full_space(A.p, A.dim), t, A);
  return find_base(wd, A.p).type;
}

}  // namespace

std::vector<IdealSummand> decompose_g0(const FpSubspace& g0, const LieAlgebraFp& L) {
  const u32 p = L.p;
  std::vector<IdealSummand> out;
  if (g0.is_zero()) return out;
  LieAlgebraFp G0 = subalgebra_table(g0, L);
  const std::size_t m = G0.dim;
  FpSubspace full = FpSubspace::full_space(p, m);
  FpSubspace Z = center(G0);
  FpSubspace D = product_space(full, full, G0);
  if (D.is_zero()) return {{g0, "abelian"}};

  // Minimal noncentral ideals: greedily accumulate the smallest basis-vector
  // ideal closures not already absorbed.
  std::vector<FpSubspace> cands;
  for (std::size_t i = 0; i < D.dim(); ++i) cands.push_back(ideal_generated(D.basis_row(i), G0));
  std::sort(cands.begin(), cands.end(),
            [](const FpSubspace& a, const FpSubspace& b) { return a.dim() < b.dim(); });
  std::vector<FpSubspace> ideals;
  FpSubspace covered = Z;
  for (const FpSubspace& I : cands) {
    if (subspace_sum(covered, I) == covered) continue;
    ideals.push_back(I);
    covered = subspace_sum(covered, I);
  }
  // The pieces must commute pairwise; overlap signals a non-split situation
  // handled below only through the center.
  for (std::size_t a = 0; a < ideals.size(); ++a)
    for (std::size_t b = a + 1; b < ideals.size(); ++b)
      if (!product_space(ideals[a], ideals[b], G0).is_zero())
        throw NotReductive("decompose_g0: noncentral ideals do not commute");

  auto lift_space = [&](const FpSubspace& S) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < S.dim(); ++i) {
      Vec c = S.basis_row(i);
      Vec v(g0.ambient, 0);
      for (std::size_t j = 0; j < m; ++j) vec_axpy(v, c[j], g0.basis_row(j), p);
      rows.push_back(std::move(v));
    }
    return FpSubspace::span(p, g0.ambient, rows);
  };

  u32 seed = 7;
  auto label_of = [&](const FpSubspace& I) -> std::string {
    LieAlgebraFp A = subalgebra_table(I, G0);
    FpSubspace af = FpSubspace::full_space(p, A.dim);
    FpSubspace ad = product_space(af, af, A);
    FpSubspace az = center(A);
    if (ad == af && az.is_zero()) {
      std::string ty = adjoint_type(A, seed++);
      return ty.empty() ? "unidentified" : ty;
    }
    if (ad == af && !az.is_zero()) {
      // Perfect with center: a central cover such as sl_n with p | n.
      QuotientAlgebra Q = quotient_algebra(A, az);
      ToralSubalgebra t = find_toral(FpSubspace::full_space(p, Q.alg.dim), Q.alg, seed++);
      WeightDecomposition wd =
          weight_decomposition(FpSubspace::full_space(p, Q.alg.dim), t, Q.alg);
      std::string ty = find_base(wd, p).type;
      return (ty.empty() ? "unidentified" : ty) + "~";
    }
    throw NotReductive("decompose_g0: solvable noncentral ideal");
  };

  if (covered != full) {
    // A non-ideal remainder: tolerate a single outer line on one perfect
    // ideal (the pgl shape); anything else is not reductive.
    if (ideals.size() == 1 && Z.is_zero() && covered.dim() + 1 == m && D == ideals[0]) {
      std::string ty = label_of(ideals[0]);
      return {{g0, ty + "-ext"}};
    }
    throw NotReductive("decompose_g0: summands and center do not fill the algebra");
  }

  if (ideals.size() == 1 && Z.dim() == 1 && subspace_intersect(ideals[0], Z).is_zero() &&
      subspace_sum(ideals[0], Z) == full) {
    return {{g0, label_of(ideals[0]) + "+z"}};
  }
  for (const FpSubspace& I : ideals) out.push_back({lift_space(I), label_of(I)});
  if (!Z.is_zero()) out.push_back({lift_space(Z), "abelian"});
  return out;
}

}  // namespace gradlie
