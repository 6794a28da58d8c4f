#include "stewart/numeration.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stewart {

namespace {

void check_base(int base) {
  if (base < 2) {
    throw std::invalid_argument("numeration base must be at least 2, got " +
                                std::to_string(base));
  }
}

}  // namespace

TrackVector::TrackVector(std::vector<DigitString> tracks)
    : tracks_(std::move(tracks)) {
  if (tracks_.empty()) return;
  length_ = tracks_.front().digits.size();
  for (const auto& t : tracks_) {
    if (t.digits.size() != length_) {
      throw std::invalid_argument("TrackVector tracks must share one length");
    }
  }
}

std::vector<int> TrackVector::bases() const {
  std::vector<int> out;
  out.reserve(tracks_.size());
  for (const auto& t : tracks_) out.push_back(t.base);
  return out;
}

std::vector<int> TrackVector::column(std::size_t pos) const {
  std::vector<int> out;
  out.reserve(tracks_.size());
  for (const auto& t : tracks_) out.push_back(t.digits[pos]);
  return out;
}

DigitString encode(std::uint64_t n, int base) {
  check_base(base);
  DigitString d{base, {}};
  const auto b = static_cast<std::uint64_t>(base);
  while (n > 0) {
    d.digits.push_back(static_cast<int>(n % b));
    n /= b;
  }
  return d;
}

std::uint64_t decode(const DigitString& d) {
  check_base(d.base);
  std::uint64_t value = 0;
  std::uint64_t weight = 1;
  bool weight_overflow = false;
  for (std::size_t i = 0; i < d.digits.size(); ++i) {
    const int digit = d.digits[i];
    if (digit < 0 || digit >= d.base) {
      throw std::invalid_argument("digit " + std::to_string(digit) +
                                  " out of range for base " +
                                  std::to_string(d.base) + " at position " +
                                  std::to_string(i));
    }
    if (digit != 0) {
      if (weight_overflow) throw std::overflow_error("digit string too long");
      value += static_cast<std::uint64_t>(digit) * weight;
    }
    if (weight > std::numeric_limits<std::uint64_t>::max() /
                     static_cast<std::uint64_t>(d.base)) {
      weight_overflow = true;
    } else {
      weight *= static_cast<std::uint64_t>(d.base);
    }
  }
  return value;
}

TrackVector align(std::vector<DigitString> tracks) {
  std::size_t len = 0;
  for (const auto& t : tracks) len = std::max(len, t.digits.size());
  for (auto& t : tracks) t.digits.resize(len, 0);
  return TrackVector(std::move(tracks));
}

TrackVector align_values(std::span<const std::uint64_t> values,
                         std::span<const int> bases) {
  if (values.size() != bases.size()) {
    throw std::invalid_argument("align_values: value/base count mismatch");
  }
  std::vector<DigitString> tracks;
  tracks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    tracks.push_back(encode(values[i], bases[i]));
  }
  return align(std::move(tracks));
}

std::string to_string(const DigitString& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DigitString& d) {
  os << '[';
  for (std::size_t i = 0; i < d.digits.size(); ++i) {
    if (i) os << ',';
    os << d.digits[i];
  }
  return os << ']';
}

}  // namespace stewart
