#include "gradlie/recognizer.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>

#include "gradlie/cartan.hpp"
#include "gradlie/classical.hpp"
#include "gradlie/melikyan.hpp"
#include "gradlie/rootsystem.hpp"

namespace gradlie {

namespace {

bool label_allowed(const std::string& label) {
  return label.find("unidentified") == std::string::npos;
}

Vec weight_neg(const Vec& w, u32 p) {
  Vec out(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = fp_neg(w[i], p);
  return out;
}

bool weight_in(const std::vector<Vec>& set, const Vec& w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

/// Quotients the fundamental-coordinate tuples by relabelings of the base:
/// among all permutations, pick the one minimizing (permuted Cartan matrix,
/// sorted permuted tuples) lexicographically and return those tuples.
std::vector<Vec> canonical_lambda(const std::vector<std::vector<int>>& cartan,
                                  std::vector<Vec> lams) {
  const std::size_t k = cartan.size();
  std::sort(lams.begin(), lams.end());
  if (k < 2) return lams;
  std::vector<std::size_t> sig(k);
  std::iota(sig.begin(), sig.end(), std::size_t{0});
  std::optional<std::pair<std::vector<int>, std::vector<Vec>>> best;
  do {
    std::vector<int> flat;
    flat.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) flat.push_back(cartan[sig[i]][sig[j]]);
    std::vector<Vec> lp;
    lp.reserve(lams.size());
    for (const Vec& l : lams) {
      Vec t(k, 0);
      for (std::size_t i = 0; i < k; ++i) t[i] = l[sig[i]];
      lp.push_back(std::move(t));
    }
    std::sort(lp.begin(), lp.end());
    std::pair<std::vector<int>, std::vector<Vec>> cand{std::move(flat), std::move(lp)};
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(sig.begin(), sig.end()));
  return best->second;
}

}  // namespace

std::string bracket_kind_name(BracketKind k) {
  switch (k) {
    case BracketKind::Toral: return "toral";
    case BracketKind::PositiveRoot: return "positive-root";
    case BracketKind::NegativeRoot: return "negative-root";
  }
  return "?";
}

HypothesisReport check_hypotheses(const GradedLieAlgebra& G) {
  const LieAlgebraFp& L = G.alg;
  HypothesisReport rep;
  FpSubspace g0 = G.component(0);
  FpSubspace gm1 = G.component(-1);

  try {
    std::vector<IdealSummand> ideals = decompose_g0(g0, L);
    bool ok = true;
    std::string detail;
    for (const IdealSummand& s : ideals) {
      if (!detail.empty()) detail += " + ";
      detail += s.label;
      if (!label_allowed(s.label)) ok = false;
    }
    rep.a_ok = ok;
    rep.a_detail = detail.empty() ? "zero" : detail;
  } catch (const std::exception& e) {
    rep.a_ok = false;
    rep.a_detail = e.what();
  }

  if (!gm1.is_zero()) {
    try {
      rep.b_ok = is_irreducible(g0, gm1, L);
    } catch (const std::exception&) {
      rep.b_ok = false;
    }
    if (!rep.b_ok) {
      try {
        std::vector<FpSubspace> chain = composition_series(g0, gm1, L);
        if (chain.size() > 1) rep.b_witness = chain.front();
      } catch (const std::exception&) {
      }
    }
  }

  rep.c_witness = transitivity_witness(G);
  rep.c_ok = !rep.c_witness.has_value();
  rep.d_witness = one_transitivity_witness(G);
  rep.d_ok = !rep.d_witness.has_value();
  return rep;
}

Fingerprint fingerprint(const GradedLieAlgebra& G, u32 seed) {
  const LieAlgebraFp& L = G.alg;
  const u32 p = L.p;
  Fingerprint fp;
  fp.p = p;
  fp.q = G.depth();
  fp.r = G.height();
  for (int j = -fp.q; j <= fp.r; ++j) fp.dims.push_back(G.component(j).dim());

  FpSubspace g0 = G.component(0);
  FpSubspace gm1 = G.component(-1);
  FpSubspace g1 = G.component(1);

  std::vector<IdealSummand> ideals = decompose_g0(g0, L);
  for (const IdealSummand& s : ideals) fp.g0_ideals.push_back(s.label);
  std::sort(fp.g0_ideals.begin(), fp.g0_ideals.end());

  FpSubspace domain = FpSubspace::zero(p, L.dim);
  for (const IdealSummand& s : ideals)
    if (s.label != "abelian") domain = subspace_sum(domain, s.ideal);
  if (domain.is_zero()) {
    fp.restricted = true;
  } else {
    try {
      PCharacter chi = p_character(G, domain);
      fp.restricted = vec_is_zero(chi.chi);
    } catch (const std::exception&) {
      fp.restricted = false;
    }
  }

  FpSubspace g0d = product_space(g0, g0, L);
  if (g0d.is_zero()) {
    // No roots to classify against: an asymmetric grading is the footprint of
    // a one-sided (Cartan-like) algebra, a symmetric one of a classical one.
    fp.bracket_kind = fp.r > fp.q   ? BracketKind::PositiveRoot
                      : fp.q > fp.r ? BracketKind::NegativeRoot
                                    : BracketKind::Toral;
    return fp;
  }

  // The torus search is randomized and can come up empty on an unlucky
  // stream; a couple of reseeds make the failure probability negligible.
  ToralSubalgebra t;
  for (u32 attempt = 0;; ++attempt) {
    try {
      t = find_toral(g0, L, seed + 101 * attempt);
      break;
    } catch (const ToralNotFound&) {
      if (attempt >= 4) throw;
    }
  }
  WeightDecomposition wd0 = weight_decomposition(g0, t, L);
  RootBase rb = find_base(wd0, p);

  std::vector<Vec> simple_e, simple_f;
  for (const Vec& b : rb.base) {
    const FpSubspace* sp = wd0.space_of(b);
    const FpSubspace* sn = wd0.space_of(weight_neg(b, p));
    if (!sp || !sn || sp->dim() != 1 || sn->dim() != 1)
      throw RootSpaceNotOneDim("fingerprint: simple root space is not a line");
    simple_e.push_back(sp->basis_row(0));
    simple_f.push_back(sn->basis_row(0));
  }
  FpSubspace npos = FpSubspace::span(p, L.dim, simple_e);
  FpSubspace nneg = FpSubspace::span(p, L.dim, simple_f);
  FundamentalWeightFrame frame = weight_frame(t, simple_e, g0, L);

  std::vector<PrimitiveVector> prim_m1 = primitive_vectors(gm1, t, npos, nneg, L);
  std::set<Vec> lamset;
  for (const PrimitiveVector& pv : prim_m1)
    if (pv.sign == PrimitiveSign::Plus) lamset.insert(fundamental_coords(frame, pv.weight, p));
  fp.lambda = canonical_lambda(rb.cartan, std::vector<Vec>(lamset.begin(), lamset.end()));

  fp.bracket_kind = BracketKind::Toral;
  if (!g1.is_zero()) {
    std::vector<PrimitiveVector> prim_1 = primitive_vectors(g1, t, npos, nneg, L);
    auto by_weight = [](const PrimitiveVector& a, const PrimitiveVector& b) {
      return a.weight < b.weight;
    };
    std::stable_sort(prim_m1.begin(), prim_m1.end(), by_weight);
    std::stable_sort(prim_1.begin(), prim_1.end(), by_weight);
    bool decided = false;
    for (const PrimitiveVector& f : prim_m1) {
      if (f.sign != PrimitiveSign::Plus) continue;
      for (const PrimitiveVector& e : prim_1) {
        if (e.sign != PrimitiveSign::Minus) continue;
        Vec z = L.bracket(f.vector, e.vector);
        if (vec_is_zero(z) || t.carrier.contains(z)) continue;
        for (std::size_t w = 0; w < wd0.weights.size() && !decided; ++w) {
          if (vec_is_zero(wd0.weights[w]) || !wd0.spaces[w].contains(z)) continue;
          // z = e_{-alpha} with alpha the negated weight of z.
          Vec alpha = weight_neg(wd0.weights[w], p);
          if (weight_in(rb.positive, alpha)) {
            fp.bracket_kind = BracketKind::PositiveRoot;
            decided = true;
          } else if (weight_in(rb.positive, wd0.weights[w])) {
            fp.bracket_kind = BracketKind::NegativeRoot;
            decided = true;
          }
        }
        if (decided) break;
      }
      if (decided) break;
    }
  }
  return fp;
}

GradedLieAlgebra reverse_grading(const GradedLieAlgebra& G) {
  std::vector<int> deg = G.degree;
  for (int& d : deg) d = -d;
  return GradedLieAlgebra(G.alg, std::move(deg));
}

namespace {

std::string tuple_str(const std::vector<u32>& n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(n[i]);
  }
  return s + ")";
}

/// Non-increasing exponent profiles of the given length with entries 1..max.
std::vector<std::vector<u32>> small_profiles(u32 len, u32 maxn) {
  std::vector<std::vector<u32>> out;
  std::vector<u32> cur;
  auto rec = [&](auto&& self, u32 pos, u32 bound) -> void {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (u32 v = bound; v >= 1; --v) {
      cur.push_back(v);
      self(self, pos + 1, v);
      cur.pop_back();
    }
  };
  rec(rec, 0, maxn);
  return out;
}

}  // namespace

std::vector<CatalogEntry> build_catalog(u32 p, u32 cap) {
  std::vector<CatalogEntry> out;

  auto push = [&](const std::string& label, const GradedLieAlgebra& G) {
    if (G.alg.dim > cap) return;
    HypothesisReport hr = check_hypotheses(G);
    if (!hr.pass()) return;
    out.push_back({label, fingerprint(G)});
  };
  auto push_both = [&](const std::string& base, const GradedLieAlgebra& G) {
    push(base + " natural", G);
    push(base + " natural reversed", reverse_grading(G));
  };

  // Root-system algebras with their node gradings; one node per diagram
  // symmetry class so that isomorphic graded presentations appear once.
  struct TypeSpec {
    SimpleType t;
    u32 rank;
    char letter;
  };
  const TypeSpec types[] = {{SimpleType::A, 1, 'A'}, {SimpleType::A, 2, 'A'},
                            {SimpleType::A, 3, 'A'}, {SimpleType::A, 4, 'A'},
                            {SimpleType::B, 3, 'B'}, {SimpleType::B, 4, 'B'},
                            {SimpleType::C, 2, 'C'}, {SimpleType::C, 3, 'C'},
                            {SimpleType::C, 4, 'C'}, {SimpleType::D, 4, 'D'},
                            {SimpleType::G, 2, 'G'}, {SimpleType::F, 4, 'F'}};
  for (const TypeSpec& ts : types) {
    std::vector<u32> nodes;
    if (ts.t == SimpleType::A) {
      for (u32 k = 1; k <= (ts.rank + 1) / 2; ++k) nodes.push_back(k);
    } else if (ts.t == SimpleType::D) {
      nodes = {1, 2};
    } else {
      for (u32 k = 1; k <= ts.rank; ++k) nodes.push_back(k);
    }
    RootDatum rd = build_root_system(ts.t, ts.rank);
    if (ts.t == SimpleType::A && (ts.rank + 1) % p == 0) {
      // The simply-connected form is not simple here; the catalog carries the
      // two quotient shapes instead.
      for (Variant v : {Variant::Psl, Variant::Pgl}) {
        ChevalleyAlgebra C = chevalley_algebra(rd, p, v);
        std::string name =
            (v == Variant::Psl ? "psl_" : "pgl_") + std::to_string(ts.rank + 1);
        for (u32 k : nodes)
          push(name + " standard node " + std::to_string(k), standard_grading(C, k));
      }
    } else {
      ChevalleyAlgebra C = chevalley_algebra(rd, p, Variant::Simple);
      std::string name = std::string(1, ts.letter) + "_" + std::to_string(ts.rank);
      for (u32 k : nodes)
        push(name + " standard node " + std::to_string(k), standard_grading(C, k));
    }
  }

  // Derivation algebras of truncated polynomial rings and their series.
  for (u32 m = 1; m <= 3; ++m) {
    for (const std::vector<u32>& n : small_profiles(m, 4)) {
      try {
        push_both("W(" + std::to_string(m) + ";" + tuple_str(n) + ")", build_W(m, n, p, cap));
      } catch (const SizeCapExceeded&) {
      }
    }
  }
  for (u32 m = 3; m <= 4; ++m) {
    for (const std::vector<u32>& n : small_profiles(m, 2)) {
      const std::string core = std::to_string(m) + ";" + tuple_str(n) + ")";
      // The divergence-free series is carved out of the full derivation
      // algebra, so its construction needs headroom above the entry cap;
      // push() still enforces the cap on the result.
      const u32 ccap = 2 * cap;
      try {
        push_both("S(" + core, build_S(m, n, p, CartanFamily::S, ccap));
        push_both("S(" + core + "^{(1)}", build_S(m, n, p, CartanFamily::S1, ccap));
        push_both("CS(" + core, build_S(m, n, p, CartanFamily::CS, ccap));
      } catch (const SizeCapExceeded&) {
      }
    }
  }
  for (u32 two_m = 2; two_m <= 4; two_m += 2) {
    for (const std::vector<u32>& n : small_profiles(two_m, 2)) {
      const std::string core = std::to_string(two_m) + ";" + tuple_str(n) + ")";
      try {
        push_both("H(" + core, build_H(two_m, n, p, CartanFamily::H, cap));
        push_both("H(" + core + "^{(2)}", build_H(two_m, n, p, CartanFamily::H2, cap));
        push_both("CH(" + core, build_H(two_m, n, p, CartanFamily::CH, cap));
      } catch (const SizeCapExceeded&) {
      }
    }
  }
  for (u32 vars = 3; vars <= 5; vars += 2) {
    for (const std::vector<u32>& n : small_profiles(vars, 2)) {
      const std::string core = std::to_string(vars) + ";" + tuple_str(n) + ")";
      try {
        push_both("K(" + core + "^{(1)}", build_K(vars, n, p, CartanFamily::K1, cap));
        // The full contact algebra coincides with its commutator except when
        // p divides vars + 3; only then is it a distinct entry.
        if ((vars + 3) % p == 0)
          push_both("K(" + core, build_K(vars, n, p, CartanFamily::K, cap));
      } catch (const SizeCapExceeded&) {
      }
    }
  }

  if (p == 5) {
    for (u32 n1 = 1; n1 <= 2; ++n1) {
      for (u32 n2 = 1; n2 <= n1; ++n2) {
        try {
          MelikyanAlgebra M = build_M(n1, n2, p, cap);
          push_both("M(2;(" + std::to_string(n1) + "," + std::to_string(n2) + "))", M.alg);
        } catch (const SizeCapExceeded&) {
        }
      }
    }
  }
  return out;
}

std::vector<std::string> catalog_collisions(const std::vector<CatalogEntry>& entries) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].fp == entries[j].fp)
        out.push_back(entries[i].label + " ~ " + entries[j].label);
  return out;
}

RecognitionResult recognize(const GradedLieAlgebra& G, const std::vector<CatalogEntry>& catalog,
                            u32 cap) {
  RecognitionResult res;
  if (!check_grading(G).clean()) {
    res.status = RecognitionStatus::HypothesesFail;
    res.message = "the structure table is not compatible with the degrees";
    return res;
  }
  res.report = check_hypotheses(G);
  if (!res.report.pass()) {
    res.status = RecognitionStatus::HypothesesFail;
    res.message = "hypotheses failed:";
    if (!res.report.a_ok) res.message += " (a: " + res.report.a_detail + ")";
    if (!res.report.b_ok) res.message += " (b)";
    if (!res.report.c_ok) res.message += " (c)";
    if (!res.report.d_ok) res.message += " (d)";
    return res;
  }
  Fingerprint fp;
  try {
    fp = fingerprint(G);
  } catch (const std::exception& e) {
    res.status = RecognitionStatus::Unrecognized;
    res.message = std::string("signature computation failed: ") + e.what();
    return res;
  }
  for (const CatalogEntry& e : catalog) {
    if (e.fp == fp) {
      res.status = RecognitionStatus::Match;
      res.label = e.label;
      res.message = e.label;
      return res;
    }
  }
  res.status = RecognitionStatus::Unrecognized;
  res.message = (cap != 0 && G.alg.dim > cap)
                    ? "no match: the dimension exceeds the catalog cap"
                    : "no match: the signature is outside the catalog";
  return res;
}

RecognitionResult recognize(const GradedLieAlgebra& G, u32 cap) {
  return recognize(G, build_catalog(G.alg.p, cap), cap);
}

GradedLieAlgebra conjugated_presentation(const GradedLieAlgebra& G, u32 seed) {
  const LieAlgebraFp& L = G.alg;
  const u32 p = L.p;
  const u32 n = L.dim;
  std::mt19937 rng(seed * 2654435761u + 12345u);

  std::vector<u32> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<u32> invperm(n);
  for (u32 i = 0; i < n; ++i) invperm[perm[i]] = i;
  std::vector<u32> scale(n);
  for (u32 i = 0; i < n; ++i) scale[i] = 1 + rng() % (p - 1);

  // Inner automorphisms from nilpotent degree-zero basis directions.
  std::vector<u32> deg0;
  for (u32 i = 0; i < n; ++i)
    if (G.degree[i] == 0) deg0.push_back(i);
  std::vector<FpMatrix> autos, autos_inv;
  for (int tries = 0; tries < 24 && autos.size() < 3 && !deg0.empty(); ++tries) {
    u32 idx = deg0[rng() % deg0.size()];
    u32 c = 1 + rng() % (p - 1);
    Vec x = L.zero_vec();
    x[idx] = c;
    try {
      FpMatrix A = exp_ad(x, L);
      FpMatrix Ainv = exp_ad(vec_scale(x, p - 1, p), L);
      autos.push_back(std::move(A));
      autos_inv.push_back(std::move(Ainv));
    } catch (const NotNilpotent&) {
    } catch (const NotAutomorphism&) {
    }
  }
  auto apply_fwd = [&](Vec v) {
    for (const FpMatrix& A : autos) v = A.apply(v);
    return v;
  };
  auto apply_inv = [&](Vec v) {
    for (auto it = autos_inv.rbegin(); it != autos_inv.rend(); ++it) v = it->apply(v);
    return v;
  };

  std::vector<Vec> b(n);
  for (u32 i = 0; i < n; ++i) b[i] = vec_scale(apply_fwd(L.basis_vec(perm[i])), scale[i], p);

  LieAlgebraFp M(p, n);
  if (L.labels.size() == n) {
    M.labels.resize(n);
    for (u32 i = 0; i < n; ++i) M.labels[i] = L.labels[perm[i]];
  }
  for (u32 i = 0; i < n; ++i) {
    for (u32 j = i + 1; j < n; ++j) {
      Vec w = L.bracket(b[i], b[j]);
      if (vec_is_zero(w)) continue;
      Vec c = apply_inv(std::move(w));  // coefficients over the mixed images
      Terms t;
      for (u32 k = 0; k < n; ++k)
        if (c[k] != 0) t.push_back({invperm[k], fp_mul(c[k], fp_inv(scale[invperm[k]], p), p)});
      M.set_bracket(i, j, std::move(t));
    }
  }
  std::vector<int> deg(n);
  for (u32 i = 0; i < n; ++i) deg[i] = G.degree[perm[i]];
  return GradedLieAlgebra(std::move(M), std::move(deg));
}

}  // namespace gradlie
