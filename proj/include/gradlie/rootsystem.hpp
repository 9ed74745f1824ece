#ifndef GRADLIE_ROOTSYSTEM_HPP
#define GRADLIE_ROOTSYSTEM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradlie/fplinalg.hpp"

namespace gradlie {

enum class SimpleType { A, B, C, D, E, F, G };

std::string type_name(SimpleType t);

/// Root coefficients over the simple roots.
using RootVec = std::vector<int>;

/// A finite reduced root system generated from its Cartan matrix by
/// root-string closure. Roots are stored as integer coefficient vectors over
/// the base; positives come first (ordered by height, then lexicographically),
/// followed by their negatives in the same order.
struct RootDatum {
  SimpleType type;
  u32 rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i, alpha_j>
  std::vector<RootVec> roots;
  std::size_t npos = 0;  // roots[0..npos) are the positive roots
  RootVec highest_root;
  std::vector<long> lensq2;  // scaled squared length per simple root (ratios exact)

  std::size_t size() const { return roots.size(); }
  bool is_positive(std::size_t idx) const { return idx < npos; }
  std::optional<u32> index_of(const RootVec& r) const;
  u32 negative_of(u32 idx) const { return idx < npos ? (u32)(idx + npos) : (u32)(idx - npos); }

  int height(const RootVec& r) const;
  /// <beta, alpha_i> for a root beta and a simple root.
  int pairing_simple(const RootVec& beta, u32 i) const;
  /// Twice the scaled inner product (beta, gamma).
  long ip2(const RootVec& beta, const RootVec& gamma) const;
  /// Scaled squared length of a root.
  long root_lensq2(const RootVec& beta) const;
  /// <beta, alpha> for arbitrary roots.
  int pairing(const RootVec& beta, const RootVec& alpha) const;
  /// Largest k >= 0 with beta - k*alpha a root (the down-length of the
  /// alpha-string through beta).
  int down_length(const RootVec& alpha, const RootVec& beta) const;

 private:
  std::map<RootVec, u32> index_;
  friend RootDatum build_root_system(SimpleType, u32);
};

/// Generates the root system for a valid (type, rank) pair; throws
/// std::invalid_argument otherwise.
RootDatum build_root_system(SimpleType type, u32 rank);

/// Indices (1-based) of the fundamental weights whose Weyl orbit is a single
/// saturated set; empty for E8, F4, G2.
std::vector<u32> minuscule_weights(SimpleType type, u32 rank);

}  // namespace gradlie

#endif
