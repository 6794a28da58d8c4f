#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stewart {

/// Least-significant-digit-first representation of a natural number.
/// The canonical form carries no trailing zeros, so 0 is the empty string.
struct DigitString {
  int base = 2;
  std::vector<int> digits;

  friend bool operator==(const DigitString&, const DigitString&) = default;
};

/// A list of digit strings padded with trailing zeros to a common length.
/// Each track keeps its own base.
class TrackVector {
 public:
  TrackVector() = default;
  explicit TrackVector(std::vector<DigitString> tracks);

  std::size_t num_tracks() const { return tracks_.size(); }
  std::size_t length() const { return length_; }
  const DigitString& track(std::size_t i) const { return tracks_[i]; }
  std::vector<int> bases() const;

  /// Digits of every track at position `pos`, track 0 first.
  std::vector<int> column(std::size_t pos) const;

 private:
  std::vector<DigitString> tracks_;
  std::size_t length_ = 0;
};

DigitString encode(std::uint64_t n, int base);

/// Throws std::invalid_argument if a digit is out of range for the base.
std::uint64_t decode(const DigitString& d);

/// Pads every track with trailing zeros up to the longest one.
TrackVector align(std::vector<DigitString> tracks);

/// Convenience: encode each value in its base and align.
TrackVector align_values(std::span<const std::uint64_t> values,
                         std::span<const int> bases);

std::string to_string(const DigitString& d);
std::ostream& operator<<(std::ostream& os, const DigitString& d);

}  // namespace stewart
