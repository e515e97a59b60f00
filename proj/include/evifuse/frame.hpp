#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evifuse {

/// Class index into a Frame. Zero-based in storage; documentation and
/// user-facing messages use C_1..C_n.
using ClassIndex = std::size_t;

inline constexpr std::size_t kMaxClasses = 16;

/// Frame of discernment: an ordered set of mutually exclusive class names.
/// Immutable after construction.
class Frame {
 public:
  /// Throws ValidationError on an empty list, more than kMaxClasses labels,
  /// an empty label or a duplicate label.
  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(ClassIndex k) const;

  /// Index of a class name, or nullopt if the frame does not contain it.
  std::optional<ClassIndex> find(const std::string& name) const;
  /// Like find() but throws ValidationError for an unknown name.
  ClassIndex index_of(const std::string& name) const;

  void check_class(ClassIndex k) const;

  bool operator==(const Frame&) const = default;

 private:
  std::vector<std::string> labels_;
};

Frame make_frame(std::vector<std::string> labels);

/// Subset of a frame, stored as a bit set over the low `width` bits.
class FocalSet {
 public:
  using Bits = std::uint32_t;

  FocalSet() = default;
  /// Throws ValidationError if width > kMaxClasses or bits outside the width.
  FocalSet(Bits bits, std::size_t width);

  static FocalSet empty(std::size_t width) { return FocalSet(0, width); }
  static FocalSet full(std::size_t width);
  static FocalSet singleton(ClassIndex k, std::size_t width);

  Bits bits() const noexcept { return bits_; }
  std::size_t width() const noexcept { return width_; }

  bool is_empty() const noexcept { return bits_ == 0; }
  bool contains(ClassIndex k) const noexcept { return k < width_ && ((bits_ >> k) & 1U) != 0; }
  bool is_subset_of(const FocalSet& other) const;
  std::size_t cardinality() const noexcept;

  FocalSet complement() const noexcept;
  FocalSet intersect(const FocalSet& other) const;
  FocalSet unite(const FocalSet& other) const;

  bool operator==(const FocalSet&) const = default;
  auto operator<=>(const FocalSet&) const = default;

 private:
  Bits bits_ = 0;
  std::size_t width_ = 0;
};

inline FocalSet operator&(const FocalSet& a, const FocalSet& b) { return a.intersect(b); }
inline FocalSet operator|(const FocalSet& a, const FocalSet& b) { return a.unite(b); }
inline FocalSet operator~(const FocalSet& a) { return a.complement(); }

/// One classifier's report for one sample.
class SourceOutput {
 public:
  enum class Kind { Numeric, Symbolic };

  /// Scores must be finite, within [0,1], and one per class of the frame.
  static SourceOutput numeric(const Frame& frame, std::vector<double> scores);
  static SourceOutput symbolic(const Frame& frame, ClassIndex label);

  Kind kind() const noexcept { return kind_; }
  bool is_numeric() const noexcept { return kind_ == Kind::Numeric; }
  std::span<const double> scores() const;
  ClassIndex label() const;

 private:
  SourceOutput() = default;
  Kind kind_ = Kind::Symbolic;
  std::vector<double> scores_;
  ClassIndex label_ = 0;
};

/// Outcome of a fusion rule: a class, or the extra conflict class C_{n+1}.
class Decision {
 public:
  static Decision of(ClassIndex k) noexcept { return Decision(k); }
  static Decision conflict() noexcept { return Decision(); }

  bool is_conflict() const noexcept { return !cls_.has_value(); }
  bool is_class(ClassIndex k) const noexcept { return cls_ == k; }
  /// Throws std::logic_error on Conflict.
  ClassIndex class_index() const;

  bool operator==(const Decision&) const = default;

 private:
  Decision() = default;
  explicit Decision(ClassIndex k) noexcept : cls_(k) {}
  std::optional<ClassIndex> cls_;
};

std::string to_string(const Decision& d, const Frame& frame);

}  // namespace evifuse
