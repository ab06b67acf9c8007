#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace optrec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default tolerance for every "lies in face / contains circumcenter" sign test.
inline constexpr double kDefaultEpsBary = 1e-10;

/// A simplex is rejected when sigma_min < ratio * sigma_max of its edge matrix.
inline constexpr double kDefaultDegeneracyRatio = 1e-10;

/// Index sets are stored as bit masks, which caps the vertex count.
inline constexpr int kMaxDimension = 30;

enum class ErrorKind {
  DegenerateSimplex,
  DimensionMismatch,
  DegenerateFace,
  NotInHull,
  NotWellCentered,
  NotOnFacet,
  OutOfInterval,
  ShapeMismatch,
  NonFinite,
  HessianTooLarge,
  NotSymmetric,
  InvalidModel,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-empty subset of {0, ..., n-1}, where n is the vertex count of the
/// simplex (or face frame) it refers to.
class FaceIndexSet {
 public:
  FaceIndexSet(std::uint32_t mask, int universe);
  FaceIndexSet(const std::vector<int>& indices, int universe);

  static FaceIndexSet full(int universe);
  static FaceIndexSet singleton(int index, int universe);

  std::uint32_t mask() const noexcept { return mask_; }
  int universe() const noexcept { return universe_; }
  int size() const noexcept;
  bool contains(int i) const noexcept { return i >= 0 && i < universe_ && ((mask_ >> i) & 1u); }
  bool is_full() const noexcept { return size() == universe_; }
  bool is_subset_of(const FaceIndexSet& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  std::vector<int> indices() const;
  FaceIndexSet without(int i) const;
  FaceIndexSet complement() const;

  /// "0;2;3" -- separator chosen so labels are safe inside CSV fields.
  std::string label() const;

  friend bool operator==(const FaceIndexSet&, const FaceIndexSet&) = default;
  friend auto operator<=>(const FaceIndexSet& a, const FaceIndexSet& b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint32_t mask_;
  int universe_;
};

/// All non-empty index sets over n vertices, ordered by size and then mask.
std::vector<FaceIndexSet> all_faces(int universe);

/// All M with subset <= M <= {0..n-1}, ordered by mask.
std::vector<FaceIndexSet> supersets(const FaceIndexSet& subset);

}  // namespace optrec
