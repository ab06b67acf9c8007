#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optrec/partition.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec::cli {

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  double worst = 0.0;  // largest observed violation measure; pass iff worst <= tolerance
  double tolerance = 0.0;
  bool pass = true;
  bool skipped = false;
  std::string note;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  std::optional<FacetScanResult> admissibility;  // set in self mode
  bool pass = true;
};

/// Largest lattice level <= max_level whose per-facet point count stays
/// within budget, so the facet scan remains cheap in higher dimensions.
int facet_scan_level(int d, int max_level = 200, double budget = 2.5e4);

/// Runs every property of the library on `s` with `samples` random draws per
/// property. Self mode samples inside T and adds the admissibility check for
/// P = T; space mode samples a box around T, where P is the whole space.
/// Deterministic for a fixed seed.
VerifyReport run_verification(const Simplex& s, std::uint64_t seed, int samples, DomainMode mode);

}  // namespace optrec::cli
