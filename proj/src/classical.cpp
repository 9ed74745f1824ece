#include "gradlie/classical.hpp"

#include <map>

namespace gradlie {

namespace {

/// Integral structure constants N(a, b) with [e_a, e_b] = N(a,b) e_{a+b},
/// fixed by choosing +(d+1) on the extraspecial pair of each positive root
/// and propagating by the Jacobi identity and the invariant-form relation
/// N(a,b)/(c,c) = N(b,c)/(a,a) for a + b + c = 0.
class SignTable {
 public:
  explicit SignTable(const RootDatum& D) : D_(D) { build(); }

  long N(u32 a, u32 b) {
    auto it = memo_.find({a, b});
    if (it != memo_.end()) return it->second;
    long v = compute(a, b);
    memo_[{a, b}] = v;
    memo_[{b, a}] = -v;
    return v;
  }

 private:
  const RootDatum& D_;
  std::map<std::pair<u32, u32>, long> memo_;

  std::optional<u32> sum_index(u32 a, u32 b) const {
    RootVec s = D_.roots[a];
    for (u32 i = 0; i < D_.rank; ++i) s[i] += D_.roots[b][i];
    return D_.index_of(s);
  }

  void build() {
    // Positive pairs, processed by increasing height of the sum; the root
    // list is already in height-lex order.
    for (u32 gi = D_.rank; gi < D_.npos; ++gi) {
      std::vector<std::pair<u32, u32>> pairs;
      for (u32 ai = 0; ai < D_.npos; ++ai) {
        RootVec beta = D_.roots[gi];
        for (u32 i = 0; i < D_.rank; ++i) beta[i] -= D_.roots[ai][i];
        auto bi = D_.index_of(beta);
        if (bi && *bi < D_.npos && ai < *bi) pairs.push_back({ai, *bi});
      }
      if (pairs.empty()) throw std::logic_error("SignTable: no decomposition of a sum root");
      auto [xi, eta] = pairs.front();  // extraspecial: minimal first member
      long n0 = D_.down_length(D_.roots[xi], D_.roots[eta]) + 1;
      memo_[{xi, eta}] = n0;
      memo_[{eta, xi}] = -n0;
      for (std::size_t t = 1; t < pairs.size(); ++t) {
        auto [ai, bi] = pairs[t];
        // Jacobi on (e_{-xi}, e_alpha, e_beta), alpha + beta = xi + eta:
        //   N(-xi,a) N(a-xi,b) + N(a,b) N(g,-xi) + N(b,-xi) N(b-xi,a) = 0
        u32 nxi = D_.negative_of(xi);
        long term1 = 0, term3 = 0;
        if (auto ami = sum_index(ai, nxi))
          term1 = N(nxi, ai) * N(*ami, bi);
        if (auto bmi = sum_index(bi, nxi))
          term3 = N(bi, nxi) * N(*bmi, ai);
        long coeff = N(gi, nxi);
        if (coeff == 0) throw std::logic_error("SignTable: vanishing pivot constant");
        long num = -(term1 + term3);
        if (num % coeff != 0) throw std::logic_error("SignTable: non-integral constant");
        memo_[{ai, bi}] = num / coeff;
        memo_[{bi, ai}] = -num / coeff;
      }
    }
  }

  long compute(u32 a, u32 b) {
    auto si = sum_index(a, b);
    if (!si) throw std::logic_error("SignTable: sum is not a root");
    bool apos = D_.is_positive(a), bpos = D_.is_positive(b);
    if (apos && bpos) throw std::logic_error("SignTable: positive pair missing from table");
    if (!apos && !bpos) return -N(D_.negative_of(a), D_.negative_of(b));
    if (!apos) return -N(b, a);
    // a positive, b negative
    if (*si < D_.npos) {
      // invariant-form relation with c = -(a+b)
      long t = N(b, D_.negative_of(*si));
      long num = t * D_.root_lensq2(D_.roots[*si]);
      long den = D_.root_lensq2(D_.roots[a]);
      if (num % den != 0) throw std::logic_error("SignTable: non-integral mixed constant");
      return num / den;
    }
    return -N(D_.negative_of(a), D_.negative_of(b));
  }
};

std::string root_label(const RootVec& r) {
  std::string s = "e[";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + "]";
}

u32 mod_p(long v, u32 p) {
  long r = v % (long)p;
  if (r < 0) r += p;
  return (u32)r;
}

}  // namespace

ChevalleyAlgebra chevalley_algebra(const RootDatum& datum, u32 p, Variant variant) {
  check_modulus(p);
  const u32 m = datum.rank;
  const u32 nroots = (u32)datum.size();
  if (variant != Variant::Simple && datum.type != SimpleType::A)
    throw std::invalid_argument("chevalley_algebra: linear variants require type A");
  if ((variant == Variant::Pgl || variant == Variant::Psl) && (m + 1) % p != 0)
    throw std::invalid_argument("chevalley_algebra: projective variants require p | rank+1");

  const bool with_t = variant == Variant::Gl || variant == Variant::Pgl;
  const u32 dim = nroots + m + (with_t ? 1 : 0);

  SignTable signs(datum);
  LieAlgebraFp L(p, dim);
  for (u32 a = 0; a < nroots; ++a) L.labels[a] = root_label(datum.roots[a]);
  for (u32 i = 0; i < m; ++i) L.labels[nroots + i] = "h" + std::to_string(i + 1);
  if (with_t) L.labels[dim - 1] = "t";

  for (u32 a = 0; a < nroots; ++a)
    for (u32 b = a + 1; b < nroots; ++b) {
      RootVec s = datum.roots[a];
      bool zero_sum = true;
      for (u32 i = 0; i < m; ++i) {
        s[i] += datum.roots[b][i];
        zero_sum = zero_sum && s[i] == 0;
      }
      if (zero_sum) {
        // [e_alpha, e_{-alpha}] = h_alpha = sum_j c_j lensq(alpha_j)/lensq(alpha) h_j
        const RootVec& alpha = datum.roots[a];
        long la = datum.root_lensq2(alpha);
        Terms t;
        for (u32 j = 0; j < m; ++j) {
          long num = (long)alpha[j] * datum.lensq2[j];
          if (num % la != 0) throw std::logic_error("chevalley_algebra: h_alpha not integral");
          u32 c = mod_p(num / la, p);
          if (c) t.push_back({nroots + j, c});
        }
        L.set_bracket(a, b, t);
        continue;
      }
      if (auto si = datum.index_of(s)) {
        u32 c = mod_p(signs.N(a, b), p);
        if (c) L.set_bracket(a, b, {{*si, c}});
      }
    }
  for (u32 i = 0; i < m; ++i)
    for (u32 a = 0; a < nroots; ++a) {
      u32 c = mod_p(datum.pairing_simple(datum.roots[a], i), p);
      if (c) L.set_bracket(nroots + i, a, {{a, c}});
    }
  if (with_t)
    for (u32 a = 0; a < nroots; ++a) {
      u32 c = mod_p(datum.roots[a][0], p);  // action of the corner diagonal element
      if (c) L.set_bracket(dim - 1, a, {{a, c}});
    }

  // Structural verification over Z: every constant has magnitude d+1 and the
  // string numbers satisfy d - u = <beta, alpha>.
  for (u32 a = 0; a < nroots; ++a)
    for (u32 b = 0; b < nroots; ++b) {
      if (b == a || b == datum.negative_of(a)) continue;
      const RootVec &alpha = datum.roots[a], &beta = datum.roots[b];
      int d = datum.down_length(alpha, beta);
      RootVec s = alpha;
      for (u32 i = 0; i < m; ++i) s[i] += beta[i];
      bool sum_root = datum.index_of(s).has_value();
      int u = sum_root ? d - datum.pairing(beta, alpha) : 0;
      if (sum_root) {
        if (d - u != datum.pairing(beta, alpha) || u <= 0)
          throw std::logic_error("chevalley_algebra: string numbers inconsistent");
        long nv = signs.N(a, b);
        if (nv != d + 1 && nv != -(d + 1))
          throw std::logic_error("chevalley_algebra: constant magnitude differs from d+1");
      }
    }

  ChevalleyAlgebra C;
  C.datum = datum;
  C.p = p;
  C.variant = variant;
  C.basis_root.assign(dim, std::nullopt);
  for (u32 a = 0; a < nroots; ++a) C.basis_root[a] = a;

  if (variant == Variant::Pgl || variant == Variant::Psl) {
    FpSubspace Z = center(L);
    if (Z.dim() != 1) throw std::logic_error("chevalley_algebra: expected one-dimensional center");
    QuotientAlgebra Q = quotient_algebra(L, Z);
    std::vector<std::optional<u32>> br(Q.alg.dim, std::nullopt);
    for (u32 i = 0; i < Q.alg.dim; ++i) {
      // transversal representatives are standard basis vectors of the parent
      const Vec& t = Q.transversal[i];
      for (u32 j = 0; j < dim; ++j)
        if (t[j]) {
          if (t[j] != 1 || vec_nnz(t) != 1)
            throw std::logic_error("chevalley_algebra: unexpected transversal");
          br[i] = C.basis_root[j];
          break;
        }
    }
    C.alg = std::move(Q.alg);
    C.basis_root = std::move(br);
  } else {
    C.alg = std::move(L);
  }
  return C;
}

PMap standard_pmap(const ChevalleyAlgebra& C) {
  PMap pm;
  pm.present = true;
  for (u32 i = 0; i < C.alg.dim; ++i)
    pm.images.push_back(C.basis_root[i] ? C.alg.zero_vec() : C.alg.basis_vec(i));
  if (!verify_pmap(C.alg, pm))
    throw std::logic_error("standard_pmap: adjoint p-th power condition failed");
  return pm;
}

GradedLieAlgebra standard_grading(const ChevalleyAlgebra& C, u32 k) {
  if (k < 1 || k > C.datum.rank) throw std::invalid_argument("standard_grading: bad node index");
  std::vector<int> deg(C.alg.dim, 0);
  for (u32 i = 0; i < C.alg.dim; ++i)
    if (C.basis_root[i]) deg[i] = C.datum.roots[*C.basis_root[i]][k - 1];
  return GradedLieAlgebra(C.alg, std::move(deg));
}

MillsSeligmanReport mills_seligman(const LieAlgebraFp& L, const FpSubspace& H) {
  if (!product_space(H, H, L).is_zero())
    throw std::invalid_argument("mills_seligman: H is not abelian");
  if (bracket_preimage(FpSubspace::full_space(L.p, L.dim), H, H, L) != H)
    throw std::invalid_argument("mills_seligman: H is not self-normalizing");

  MillsSeligmanReport rep;
  auto ds = derived_series(L);
  rep.perfect = ds.size() == 1 && L.dim > 0;
  if (!rep.perfect) rep.failures.push_back("not perfect");
  rep.centerless = center(L).is_zero();
  if (!rep.centerless) rep.failures.push_back("nonzero center");

  // Joint eigenspace decomposition with respect to H.
  std::vector<std::pair<Vec, FpSubspace>> spaces;
  spaces.push_back({Vec{}, FpSubspace::full_space(L.p, L.dim)});
  for (std::size_t hi = 0; hi < H.dim(); ++hi) {
    FpMatrix A = L.ad(H.basis_row(hi)).to_dense();
    std::vector<std::pair<Vec, FpSubspace>> next;
    for (u32 c = 0; c < L.p; ++c) {
      FpMatrix Ac = A;
      for (u32 i = 0; i < L.dim; ++i) Ac.at(i, i) = fp_sub(Ac.at(i, i), c, L.p);
      FpSubspace ker = kernel(Ac);
      if (ker.is_zero()) continue;
      for (auto& [lab, S] : spaces) {
        FpSubspace T = subspace_intersect(S, ker);
        if (!T.is_zero()) {
          Vec l2 = lab;
          l2.push_back(c);
          next.push_back({std::move(l2), std::move(T)});
        }
      }
    }
    spaces = std::move(next);
  }
  std::size_t total = 0;
  for (auto& [lab, S] : spaces) total += S.dim();
  rep.decomposition = total == L.dim;
  if (!rep.decomposition) rep.failures.push_back("eigenspace decomposition incomplete");

  std::map<Vec, FpSubspace> by_weight;
  for (auto& [lab, S] : spaces) by_weight.emplace(lab, S);
  Vec zero_label(H.dim(), 0);
  auto present = [&](const Vec& w) { return by_weight.count(w) > 0; };

  rep.pairing_lines = true;
  for (auto& [lab, S] : by_weight) {
    if (lab == zero_label) continue;
    Vec neg(lab.size());
    for (std::size_t i = 0; i < lab.size(); ++i) neg[i] = fp_neg(lab[i], L.p);
    auto it = by_weight.find(neg);
    if (it == by_weight.end() || product_space(S, it->second, L).dim() != 1) {
      rep.pairing_lines = false;
      rep.failures.push_back("opposite-root pairing not one-dimensional");
      break;
    }
  }

  rep.no_full_line = true;
  for (auto& [a, Sa] : by_weight) {
    if (a == zero_label || !rep.no_full_line) continue;
    for (auto& [b, Sb] : by_weight) {
      if (b == zero_label) continue;
      bool all = true;
      for (u32 k = 0; k < L.p && all; ++k) {
        Vec w(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) w[i] = fp_add(b[i], fp_mul(k, a[i], L.p), L.p);
        all = present(w);
      }
      if (all) {
        rep.no_full_line = false;
        rep.failures.push_back("a full line of weights is present");
        break;
      }
    }
  }
  return rep;
}

FpMatrix exp_ad(const Vec& x, const LieAlgebraFp& L) {
  const u32 p = L.p;
  FpMatrix A = L.ad(x).to_dense();
  FpMatrix power = FpMatrix::identity(p, L.dim);
  FpMatrix phi(p, L.dim, L.dim);
  u32 fact_inv = 1;
  for (u32 i = 0; i < p; ++i) {
    if (i > 0) {
      power = A.mul(power);
      fact_inv = fp_mul(fact_inv, fp_inv(i % p, p), p);
    }
    for (std::size_t k = 0; k < phi.a.size(); ++k)
      phi.a[k] = fp_add(phi.a[k], fp_mul(fact_inv, power.a[k], p), p);
  }
  if (!A.mul(power).is_zero()) throw NotNilpotent("exp_ad: (ad x)^p is nonzero");

  for (u32 i = 0; i < L.dim; ++i) {
    Vec fi = phi.apply(L.basis_vec(i));
    for (u32 j = i + 1; j < L.dim; ++j) {
      Vec lhs = phi.apply(L.bracket_basis(i, j));
      Vec rhs = L.bracket(fi, phi.apply(L.basis_vec(j)));
      if (lhs != rhs) throw NotAutomorphism("exp_ad: multiplicativity failed");
    }
  }
  return phi;
}

}  // namespace gradlie
