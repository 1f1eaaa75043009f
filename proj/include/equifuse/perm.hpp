#pragma once

#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace equifuse
{

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1}, stored as its image tuple.
///
/// Products follow function composition: (x * y)(i) = x(y(i)), i.e. y is
/// applied first.
class Perm
{
public:
  Perm() = default;

  explicit Perm(std::vector<Point> images)
  : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw Error(ErrorCode::InvalidInput, "image tuple is not a bijection");
      seen[p] = true;
    }
  }

  static Perm identity(std::size_t degree)
  {
    std::vector<Point> im(degree);
    for (std::size_t i = 0; i < degree; ++i)
      im[i] = static_cast<Point>(i);
    return Perm(std::move(im), Unchecked{});
  }

  std::size_t degree() const noexcept
  { return images_.size(); }

  Point operator()(Point i) const
  { return images_[i]; }

  const std::vector<Point> &images() const noexcept
  { return images_; }

  bool is_identity() const noexcept
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Perm inverse() const
  {
    std::vector<Point> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      im[images_[i]] = static_cast<Point>(i);
    return Perm(std::move(im), Unchecked{});
  }

  friend Perm operator*(const Perm &x, const Perm &y)
  {
    if (x.degree() != y.degree())
      throw Error(ErrorCode::DegreeMismatch, "cannot compose permutations of different degree");
    std::vector<Point> im(y.images_.size());
    for (std::size_t i = 0; i < im.size(); ++i)
      im[i] = x.images_[y.images_[i]];
    return Perm(std::move(im), Unchecked{});
  }

  friend bool operator==(const Perm &, const Perm &) = default;
  friend auto operator<=>(const Perm &a, const Perm &b)
  { return a.images_ <=> b.images_; }

  /// Disjoint cycle notation, fixed points omitted; "()" for the identity.
  std::string to_cycles() const
  {
    std::ostringstream os;
    std::vector<bool> done(images_.size(), false);
    for (Point i = 0; i < images_.size(); ++i) {
      if (done[i] || images_[i] == i)
        continue;
      os << '(';
      Point j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = true;
        os << (first ? "" : " ") << j;
        first = false;
        j = images_[j];
      }
      os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
  }

  /// Parses cycle notation such as "(0 1)(2 3)" or "(0,1,2)".
  static Perm from_cycles(std::string_view text, std::size_t degree)
  {
    std::vector<Point> im(degree);
    for (std::size_t i = 0; i < degree; ++i)
      im[i] = static_cast<Point>(i);

    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
        ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(')
        throw Error(ErrorCode::InvalidInput, "expected '(' in cycle notation: " + std::string(text));
      ++pos;
      std::vector<Point> cycle;
      for (;;) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ','))
          ++pos;
        if (pos >= text.size())
          throw Error(ErrorCode::InvalidInput, "unterminated cycle: " + std::string(text));
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        if (text[pos] < '0' || text[pos] > '9')
          throw Error(ErrorCode::InvalidInput, "bad character in cycle notation: " + std::string(text));
        std::uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
          v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        if (v >= degree)
          throw Error(ErrorCode::DegreeMismatch, "point " + std::to_string(v) + " exceeds degree");
        cycle.push_back(static_cast<Point>(v));
      }
      // cycles act right to left like the product they denote
      std::vector<Point> step(degree);
      for (std::size_t i = 0; i < degree; ++i)
        step[i] = static_cast<Point>(i);
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (step[cycle[k]] != cycle[k])
          throw Error(ErrorCode::InvalidInput, "repeated point in cycle");
        step[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
      std::vector<Point> next(degree);
      for (std::size_t i = 0; i < degree; ++i)
        next[i] = im[step[i]];
      im = std::move(next);
      skip_ws();
    }
    return Perm(std::move(im));
  }

private:
  struct Unchecked {};
  Perm(std::vector<Point> images, Unchecked)
  : images_(std::move(images))
  {}

  std::vector<Point> images_;
};

} // namespace equifuse
