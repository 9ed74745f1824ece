#include "gradlie/rootsystem.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gradlie {

std::string type_name(SimpleType t) {
  switch (t) {
    case SimpleType::A: return "A";
    case SimpleType::B: return "B";
    case SimpleType::C: return "C";
    case SimpleType::D: return "D";
    case SimpleType::E: return "E";
    case SimpleType::F: return "F";
    case SimpleType::G: return "G";
  }
  return "?";
}

std::optional<u32> RootDatum::index_of(const RootVec& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootDatum::height(const RootVec& r) const {
  return std::accumulate(r.begin(), r.end(), 0);
}

int RootDatum::pairing_simple(const RootVec& beta, u32 i) const {
  int s = 0;
  for (u32 j = 0; j < rank; ++j) s += beta[j] * cartan[j][i];
  return s;
}

long RootDatum::ip2(const RootVec& beta, const RootVec& gamma) const {
  // 2*(beta, gamma) in the scaled form: (alpha_i, alpha_j) = A[i][j]*d_j/2
  // with d_j = lensq2[j].
  long s = 0;
  for (u32 i = 0; i < rank; ++i)
    for (u32 j = 0; j < rank; ++j) s += (long)beta[i] * gamma[j] * cartan[i][j] * lensq2[j];
  if (s % 2 != 0) throw std::logic_error("ip2: non-integral scaled product");
  return s / 2;
}

long RootDatum::root_lensq2(const RootVec& beta) const { return ip2(beta, beta); }

int RootDatum::pairing(const RootVec& beta, const RootVec& alpha) const {
  long num = 2 * ip2(beta, alpha);
  long den = root_lensq2(alpha);
  if (den == 0 || num % den != 0) throw std::logic_error("pairing: not integral");
  return (int)(num / den);
}

int RootDatum::down_length(const RootVec& alpha, const RootVec& beta) const {
  int d = 0;
  RootVec cur = beta;
  while (true) {
    for (u32 i = 0; i < rank; ++i) cur[i] -= alpha[i];
    if (!index_of(cur)) break;
    ++d;
  }
  return d;
}

namespace {

std::vector<std::vector<int>> cartan_matrix(SimpleType type, u32 m) {
  auto bad = [&]() {
    throw std::invalid_argument("build_root_system: invalid rank " + std::to_string(m) +
                                " for type " + type_name(type));
  };
  std::vector<std::vector<int>> A(m, std::vector<int>(m, 0));
  for (u32 i = 0; i < m; ++i) A[i][i] = 2;
  auto chain = [&](u32 a, u32 b) { A[a][b] = A[b][a] = -1; };
  switch (type) {
    case SimpleType::A:
      if (m < 1) bad();
      for (u32 i = 0; i + 1 < m; ++i) chain(i, i + 1);
      break;
    case SimpleType::B:
      if (m < 2) bad();
      for (u32 i = 0; i + 1 < m; ++i) chain(i, i + 1);
      A[m - 2][m - 1] = -2;  // last simple root short
      break;
    case SimpleType::C:
      if (m < 2) bad();
      for (u32 i = 0; i + 1 < m; ++i) chain(i, i + 1);
      A[m - 1][m - 2] = -2;  // last simple root long
      break;
    case SimpleType::D:
      if (m < 4) bad();
      for (u32 i = 0; i + 2 < m; ++i) chain(i, i + 1);
      chain(m - 3, m - 1);
      break;
    case SimpleType::E:
      if (m < 6 || m > 8) bad();
      chain(0, 2);
      chain(1, 3);
      chain(2, 3);
      for (u32 i = 3; i + 1 < m; ++i) chain(i, i + 1);
      break;
    case SimpleType::F:
      if (m != 4) bad();
      chain(0, 1);
      chain(2, 3);
      A[1][2] = -2;  // third and fourth simple roots short
      A[2][1] = -1;
      break;
    case SimpleType::G:
      if (m != 2) bad();
      A[0][1] = -1;  // first simple root short
      A[1][0] = -3;
      break;
  }
  return A;
}

}  // namespace

RootDatum build_root_system(SimpleType type, u32 rank) {
  RootDatum D;
  D.type = type;
  D.rank = rank;
  D.cartan = cartan_matrix(type, rank);

  // Scaled squared lengths of the simple roots: d_j/d_i = A[j][i]/A[i][j]
  // along diagram edges; integral scaling (only ratios matter downstream).
  D.lensq2.assign(rank, 0);
  D.lensq2[0] = 2;
  bool progress = true;
  while (progress) {
    progress = false;
    for (u32 i = 0; i < rank; ++i)
      for (u32 j = 0; j < rank; ++j) {
        if (i == j || D.cartan[i][j] == 0) continue;
        if (D.lensq2[i] != 0 && D.lensq2[j] == 0) {
          long num = D.lensq2[i] * D.cartan[j][i];
          if (num % D.cartan[i][j] != 0) {
            for (auto& v : D.lensq2) v *= 2;  // rescale and retry
            num = D.lensq2[i] * D.cartan[j][i];
          }
          D.lensq2[j] = num / D.cartan[i][j];
          progress = true;
        }
      }
  }
  for (long v : D.lensq2)
    if (v <= 0) throw std::logic_error("build_root_system: length computation failed");
  // Keep every A[i][j] * lensq2[j] even so scaled inner products stay integral.
  auto half_integral = [&]() {
    for (u32 i = 0; i < rank; ++i)
      for (u32 j = 0; j < rank; ++j)
        if ((D.cartan[i][j] * D.lensq2[j]) % 2 != 0) return true;
    return false;
  };
  while (half_integral())
    for (auto& v : D.lensq2) v *= 2;

  // Positive roots by string closure, height by height.
  std::map<RootVec, u32> index;
  std::vector<RootVec> pos;
  for (u32 i = 0; i < rank; ++i) {
    RootVec r(rank, 0);
    r[i] = 1;
    index[r] = (u32)pos.size();
    pos.push_back(r);
  }
  std::size_t scan = 0;
  while (scan < pos.size()) {
    RootVec beta = pos[scan++];
    for (u32 i = 0; i < rank; ++i) {
      RootVec alpha(rank, 0);
      alpha[i] = 1;
      if (beta == alpha) continue;
      int d = 0;
      RootVec cur = beta;
      while (true) {
        cur[i] -= 1;
        bool is_root = index.count(cur) > 0;
        bool is_simple_neg = false;  // beta - k*alpha_i never negative for beta positive != alpha_i
        if (!is_root && !is_simple_neg) break;
        ++d;
      }
      int pair = 0;
      for (u32 j = 0; j < rank; ++j) pair += beta[j] * D.cartan[j][i];
      int u = d - pair;
      if (u > 0) {
        RootVec up = beta;
        up[i] += 1;
        if (!index.count(up)) {
          index[up] = (u32)pos.size();
          pos.push_back(up);
        }
      }
    }
  }
  std::sort(pos.begin(), pos.end(), [&](const RootVec& a, const RootVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  D.npos = pos.size();
  D.roots = pos;
  for (const RootVec& r : pos) {
    RootVec neg(rank);
    for (u32 i = 0; i < rank; ++i) neg[i] = -r[i];
    D.roots.push_back(neg);
  }
  D.index_.clear();
  for (u32 i = 0; i < D.roots.size(); ++i) D.index_[D.roots[i]] = i;
  D.highest_root = pos.back();
  for (const RootVec& r : pos)
    for (u32 i = 0; i < rank; ++i)
      if (r[i] > D.highest_root[i])
        throw std::logic_error("build_root_system: highest root not dominant");
  return D;
}

std::vector<u32> minuscule_weights(SimpleType type, u32 rank) {
  std::vector<u32> out;
  switch (type) {
    case SimpleType::A:
      for (u32 i = 1; i <= rank; ++i) out.push_back(i);
      break;
    case SimpleType::B:
      out = {rank};
      break;
    case SimpleType::C:
      out = {1};
      break;
    case SimpleType::D:
      out = {1, rank - 1, rank};
      break;
    case SimpleType::E:
      if (rank == 6) out = {1, 6};
      if (rank == 7) out = {7};
      break;
    case SimpleType::F:
    case SimpleType::G:
      break;
  }
  return out;
}

}  // namespace gradlie
