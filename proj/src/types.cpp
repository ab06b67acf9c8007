#include "optrec/types.hpp"

#include <algorithm>
#include <bit>

namespace optrec {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::NotInHull: return "NotInHull";
    case ErrorKind::NotWellCentered: return "NotWellCentered";
    case ErrorKind::NotOnFacet: return "NotOnFacet";
    case ErrorKind::OutOfInterval: return "OutOfInterval";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::HessianTooLarge: return "HessianTooLarge";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

FaceIndexSet::FaceIndexSet(std::uint32_t mask, int universe) : mask_(mask), universe_(universe) {
  if (universe < 1 || universe > kMaxDimension + 1) {
    throw Error(ErrorKind::InvalidArgument, "index universe out of range");
  }
  if (mask == 0) throw Error(ErrorKind::InvalidArgument, "index set must be non-empty");
  if (universe < 32 && (mask >> universe) != 0) {
    throw Error(ErrorKind::InvalidArgument, "index out of range");
  }
}

FaceIndexSet::FaceIndexSet(const std::vector<int>& indices, int universe)
    : FaceIndexSet([&] {
        std::uint32_t m = 0;
        for (int i : indices) {
          if (i < 0 || i >= universe) throw Error(ErrorKind::InvalidArgument, "index out of range");
          if ((m >> i) & 1u) throw Error(ErrorKind::InvalidArgument, "duplicate index");
          m |= 1u << i;
        }
        return m;
      }(), universe) {}

FaceIndexSet FaceIndexSet::full(int universe) {
  return FaceIndexSet(universe >= 32 ? ~0u : (1u << universe) - 1u, universe);
}

FaceIndexSet FaceIndexSet::singleton(int index, int universe) {
  return FaceIndexSet(std::vector<int>{index}, universe);
}

int FaceIndexSet::size() const noexcept { return std::popcount(mask_); }

std::vector<int> FaceIndexSet::indices() const {
  std::vector<int> out;
  out.reserve(size());
  for (int i = 0; i < universe_; ++i) {
    if ((mask_ >> i) & 1u) out.push_back(i);
  }
  return out;
}

FaceIndexSet FaceIndexSet::without(int i) const {
  return FaceIndexSet(mask_ & ~(1u << i), universe_);
}

FaceIndexSet FaceIndexSet::complement() const {
  return FaceIndexSet(full(universe_).mask_ & ~mask_, universe_);
}

std::string FaceIndexSet::label() const {
  std::string s;
  for (int i : indices()) {
    if (!s.empty()) s += ';';
    s += std::to_string(i);
  }
  return s;
}

std::vector<FaceIndexSet> all_faces(int universe) {
  const std::uint32_t top = FaceIndexSet::full(universe).mask();
  std::vector<FaceIndexSet> out;
  out.reserve(top);
  for (std::uint32_t m = 1; m <= top && m != 0; ++m) out.emplace_back(m, universe);
  std::stable_sort(out.begin(), out.end(), [](const FaceIndexSet& a, const FaceIndexSet& b) {
    return a.size() < b.size();
  });
  return out;
}

std::vector<FaceIndexSet> supersets(const FaceIndexSet& subset) {
  const std::uint32_t free = FaceIndexSet::full(subset.universe()).mask() & ~subset.mask();
  std::vector<std::uint32_t> masks;
  // Enumerate submasks of the free bits.
  std::uint32_t sub = free;
  while (true) {
    masks.push_back(subset.mask() | sub);
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  std::sort(masks.begin(), masks.end());
  std::vector<FaceIndexSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(m, subset.universe());
  return out;
}

}  // namespace optrec
