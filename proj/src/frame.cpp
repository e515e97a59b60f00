#include "evifuse/frame.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "evifuse/error.hpp"

namespace evifuse {

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("frame needs at least one class");
  if (labels_.size() > kMaxClasses)
    throw ValidationError("frame has " + std::to_string(labels_.size()) + " classes, at most " +
                          std::to_string(kMaxClasses) + " are supported");
  std::unordered_set<std::string> seen;
  for (const auto& name : labels_) {
    if (name.empty()) throw ValidationError("empty class label");
    if (!seen.insert(name).second) throw ValidationError("duplicate class label '" + name + "'");
  }
}

const std::string& Frame::label(ClassIndex k) const {
  check_class(k);
  return labels_[k];
}

std::optional<ClassIndex> Frame::find(const std::string& name) const {
  for (ClassIndex k = 0; k < labels_.size(); ++k)
    if (labels_[k] == name) return k;
  return std::nullopt;
}

ClassIndex Frame::index_of(const std::string& name) const {
  auto k = find(name);
  if (!k) throw ValidationError("unknown class name '" + name + "'");
  return *k;
}

void Frame::check_class(ClassIndex k) const {
  if (k >= labels_.size())
    throw ValidationError("class index " + std::to_string(k + 1) + " outside C_1..C_" +
                          std::to_string(labels_.size()));
}

Frame make_frame(std::vector<std::string> labels) { return Frame(std::move(labels)); }

// FocalSet

namespace {

FocalSet::Bits mask_for(std::size_t width) {
  return width >= 32 ? ~FocalSet::Bits{0} : ((FocalSet::Bits{1} << width) - 1);
}

void require_same_width(const FocalSet& a, const FocalSet& b) {
  if (a.width() != b.width())
    throw ValidationError("focal sets belong to different frames (width " + std::to_string(a.width()) +
                          " vs " + std::to_string(b.width()) + ")");
}

}  // namespace

FocalSet::FocalSet(Bits bits, std::size_t width) : bits_(bits), width_(width) {
  if (width > kMaxClasses) throw ValidationError("focal set wider than " + std::to_string(kMaxClasses));
  if ((bits & ~mask_for(width)) != 0) throw ValidationError("focal set uses bits outside its frame");
}

FocalSet FocalSet::full(std::size_t width) { return FocalSet(mask_for(width), width); }

FocalSet FocalSet::singleton(ClassIndex k, std::size_t width) {
  if (k >= width) throw ValidationError("class index outside frame");
  return FocalSet(Bits{1} << k, width);
}

bool FocalSet::is_subset_of(const FocalSet& other) const {
  require_same_width(*this, other);
  return (bits_ & ~other.bits_) == 0;
}

std::size_t FocalSet::cardinality() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

FocalSet FocalSet::complement() const noexcept {
  FocalSet out;
  out.bits_ = ~bits_ & mask_for(width_);
  out.width_ = width_;
  return out;
}

FocalSet FocalSet::intersect(const FocalSet& other) const {
  require_same_width(*this, other);
  FocalSet out = *this;
  out.bits_ &= other.bits_;
  return out;
}

FocalSet FocalSet::unite(const FocalSet& other) const {
  require_same_width(*this, other);
  FocalSet out = *this;
  out.bits_ |= other.bits_;
  return out;
}

// SourceOutput

SourceOutput SourceOutput::numeric(const Frame& frame, std::vector<double> scores) {
  if (scores.size() != frame.size())
    throw ValidationError("expected " + std::to_string(frame.size()) + " scores, got " +
                          std::to_string(scores.size()));
  for (double s : scores) {
    if (!std::isfinite(s)) throw ValidationError("non-finite score");
    if (s < 0.0 || s > 1.0) throw ValidationError("score " + std::to_string(s) + " outside [0,1]");
  }
  SourceOutput out;
  out.kind_ = Kind::Numeric;
  out.scores_ = std::move(scores);
  return out;
}

SourceOutput SourceOutput::symbolic(const Frame& frame, ClassIndex label) {
  frame.check_class(label);
  SourceOutput out;
  out.kind_ = Kind::Symbolic;
  out.label_ = label;
  return out;
}

std::span<const double> SourceOutput::scores() const {
  if (kind_ != Kind::Numeric) throw ValidationError("symbolic source output has no scores");
  return scores_;
}

ClassIndex SourceOutput::label() const {
  if (kind_ != Kind::Symbolic) throw ValidationError("numeric source output has no label");
  return label_;
}

ClassIndex Decision::class_index() const {
  if (!cls_) throw std::logic_error("conflict decision has no class");
  return *cls_;
}

std::string to_string(const Decision& d, const Frame& frame) {
  return d.is_conflict() ? std::string("<conflict>") : frame.label(d.class_index());
}

}  // namespace evifuse
