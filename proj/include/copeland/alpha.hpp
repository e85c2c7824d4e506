#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "copeland/error.hpp"

namespace copeland {

/// Tie reward alpha = num/den in [0, 1], kept in lowest terms.
///
/// Scores are never represented as fractions: a candidate's Copeland^alpha
/// score times `den` is the integer den*wins + num*ties, see ScoreVector.
class Alpha {
 public:
  constexpr Alpha() = default;

  Alpha(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0 || num > den) {
      throw Error(Errc::InvalidAlpha,
                  std::to_string(num) + "/" + std::to_string(den) + " is not in [0,1]");
    }
    const auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  /// Parses "S/T" (or a bare "0" / "1").
  static Alpha parse(std::string_view text) {
    const auto slash = text.find('/');
    auto read = [&](std::string_view part) {
      std::int64_t v = 0;
      const auto* first = part.data();
      const auto* last = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (part.empty() || ec != std::errc{} || ptr != last) {
        throw Error(Errc::InvalidAlpha, "cannot parse alpha '" + std::string(text) + "'");
      }
      return v;
    };
    if (slash == std::string_view::npos) return Alpha(read(text), 1);
    return Alpha(read(text.substr(0, slash)), read(text.substr(slash + 1)));
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }

  /// Scaled points for a win / tie / loss.
  constexpr std::int64_t win_points() const noexcept { return den_; }
  constexpr std::int64_t tie_points() const noexcept { return num_; }

  constexpr bool strictly_between_zero_and_one() const noexcept { return num_ > 0 && num_ < den_; }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend constexpr bool operator==(const Alpha&, const Alpha&) = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 2;
};

}  // namespace copeland
