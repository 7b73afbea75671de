#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tcr/layering.hpp"
#include "tcr/sections.hpp"

namespace tcr {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct Windows {
  int orbit = 64;
  int cp_window = 12;
  int truncation = 6;
  long grid = 0;
  long max_degree = 8;
};

// A validated fixture: curve, translation, named points, bar divisor and windows.
class Fixture {
 public:
  static Fixture from_json(const nlohmann::json& j);
  static Fixture load(const std::string& path);

  const std::string& name() const { return name_; }
  const Translation& translation() const { return tr_; }
  const Curve& curve() const { return tr_.curve(); }
  const Divisor& m() const { return m_; }
  const Point& beta() const { return beta_; }
  const Windows& windows() const { return win_; }
  const std::map<std::string, Point>& points() const { return points_; }
  const Point& point(const std::string& name) const;

  // `2*p@0 + p@-1 + q + (1,0) + Oinf`; @k applies tau^k
  Divisor parse_divisor(const std::string& text) const;
  // semicolon-separated layers, optional `left:` or `right:` prefix
  Layering parse_layering(const std::string& text) const;
  TcrContext context(long max_degree = 0) const;

 private:
  Fixture(std::string name, Translation tr) : name_(std::move(name)), tr_(std::move(tr)) {}
  std::string name_;
  Translation tr_;
  std::map<std::string, Point> points_;
  Divisor m_;
  Point beta_;
  Windows win_;
};

}  // namespace tcr
