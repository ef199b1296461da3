#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbt {

/// A point of the domain {0, ..., n-1}. Text forms are 1-based.
using Point = std::uint32_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Bijection on {0, ..., degree-1} acting on the right: x^(pq) = (x^p)^q.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<Point>(i);
  }

  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw std::invalid_argument("images do not form a permutation");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds from 0-based cycles; points must be distinct and < degree.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles) {
    std::vector<Point> images(degree);
    for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
    for (const auto& cycle : cycles) {
      std::vector<Point> c(cycle);
      for (std::size_t i = 0; i < c.size(); ++i) images.at(c[i]) = c[(i + 1) % c.size()];
    }
    return Permutation(std::move(images));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  /// Smallest point moved, or degree() for the identity.
  Point first_moved_point() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return static_cast<Point>(i);
    return static_cast<Point>(images_.size());
  }

  Permutation inverse() const {
    Permutation result(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[images_[i]] = static_cast<Point>(i);
    return result;
  }

  /// this * other: apply this first, then other.
  Permutation operator*(const Permutation& other) const {
    if (degree() != other.degree()) throw std::invalid_argument("permutation degree mismatch");
    Permutation result;
    result.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) result.images_[i] = other.images_[images_[i]];
    return result;
  }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }
inline Permutation inverse(const Permutation& p) { return p.inverse(); }

/// Disjoint-cycle text, 1-based, cycles ordered by smallest point and each
/// cycle starting at its smallest point; "()" for the identity.
inline std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out += '(';
    Point x = start;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(x + 1);
      seen[x] = true;
      x = p[x];
      first = false;
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace detail {

class CycleScanner {
 public:
  explicit CycleScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::size_t position() const { return pos_; }

  /// Reads a 1-based point and returns it 0-based.
  Point point(std::size_t degree) {
    skip_space();
    std::size_t begin = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > degree + 1) value = degree + 1;
      ++pos_;
    }
    if (begin == pos_) throw ParseError("expected a point", begin);
    if (value < 1 || value > degree)
      throw ParseError("point " + std::string(text_.substr(begin, pos_ - begin)) +
                           " out of range 1.." + std::to_string(degree),
                       begin);
    return static_cast<Point>(value - 1);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses disjoint-cycle notation such as "(1,2,3)(4,5)". Points are
/// 1-based; "()" or an empty string is the identity. Throws ParseError.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  std::vector<bool> used(degree, false);
  detail::CycleScanner scan(text);
  while (!scan.done()) {
    scan.expect('(');
    if (scan.peek() == ')') {
      scan.expect(')');
      continue;
    }
    std::vector<Point> cycle;
    for (;;) {
      std::size_t at = (scan.skip_space(), scan.position());
      Point x = scan.point(degree);
      if (used[x]) throw ParseError("repeated point " + std::to_string(x + 1), at);
      used[x] = true;
      cycle.push_back(x);
      char c = scan.peek();
      if (c == ',') {
        scan.expect(',');
      } else if (c == ')') {
        scan.expect(')');
        break;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        continue;  // whitespace-separated points
      } else {
        throw ParseError("expected ',' or ')'", scan.position());
      }
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace pbt
