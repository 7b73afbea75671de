#include "tcr/config.hpp"

#include <cctype>
#include <fstream>

namespace tcr {

using nlohmann::json;

namespace {

std::string str_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

Scalar scalar_of(const Field& f, const json& v) { return f.parse_element(str_of(v)); }

class DivisorParser {
 public:
  DivisorParser(const Fixture& fx, const std::string& s, std::size_t offset) : fx_(fx), s_(s), off_(offset) {}

  Divisor run() {
    Divisor d;
    skip();
    if (i_ == s_.size()) return d;
    if (s_[i_] == '0') {  // the zero divisor
      ++i_;
      skip();
      if (i_ != s_.size()) fail("unexpected text after '0'");
      return d;
    }
    bool first = true;
    while (true) {
      skip();
      long sign = 1;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
        sign = s_[i_] == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip();
      long coeff = 1;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        coeff = number();
        skip();
        if (i_ < s_.size() && s_[i_] == '*') {
          ++i_;
          skip();
        } else {
          fail("expected '*' after coefficient");
        }
      }
      Point p = atom();
      skip();
      if (i_ < s_.size() && s_[i_] == '@') {
        ++i_;
        skip();
        long sgn = 1;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) sgn = s_[i_++] == '-' ? -1 : 1;
        p = fx_.translation().tau_pow(p, sgn * number());
      }
      d.add(p, sign * coeff);
      skip();
      if (i_ == s_.size()) break;
    }
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, off_ + i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  long number() {
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return std::stol(s_.substr(start, i_ - start));
  }

  Point atom() {
    if (i_ < s_.size() && s_[i_] == '(') {
      const std::size_t close = s_.find(')', i_);
      const std::size_t comma = s_.find(',', i_);
      if (close == std::string::npos || comma == std::string::npos || comma > close) fail("malformed point literal");
      const Field f = fx_.curve().field();
      const std::size_t at = i_;
      try {
        Point p = fx_.curve().point(f.parse_element(s_.substr(i_ + 1, comma - i_ - 1)),
                                    f.parse_element(s_.substr(comma + 1, close - comma - 1)));
        i_ = close + 1;
        return p;
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad point literal: ") + e.what(), off_ + at);
      }
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a point name");
    const std::string name = s_.substr(start, i_ - start);
    if (name == "Oinf") return Point::infinity();
    auto it = fx_.points().find(name);
    if (it == fx_.points().end()) throw ParseError("unknown point '" + name + "'", off_ + start);
    return it->second;
  }

  const Fixture& fx_;
  const std::string& s_;
  std::size_t off_;
  std::size_t i_ = 0;
};

Point resolve_point(const Curve& c, const std::map<std::string, Point>& known, const std::string& alpha_name,
                    const json& spec, const std::string& name) {
  const Field f = c.field();
  if (spec.contains("x")) return c.point(scalar_of(f, spec.at("x")), scalar_of(f, spec.at("y")));
  if (spec.contains("multiple")) {
    const std::string base = spec.value("base", alpha_name);
    auto it = known.find(base);
    if (it == known.end()) throw std::invalid_argument("point '" + name + "': unknown base '" + base + "'");
    Point p = c.mul(spec.at("multiple").get<long>(), it->second);
    if (spec.contains("plus")) {
      auto jt = known.find(spec.at("plus").get<std::string>());
      if (jt == known.end()) throw std::invalid_argument("point '" + name + "': unknown summand");
      p = c.add(p, jt->second);
    }
    return p;
  }
  throw std::invalid_argument("point '" + name + "': need x/y or multiple");
}

}  // namespace

Fixture Fixture::from_json(const json& j) {
  const Field f = Field::parse(j.at("field").get<std::string>());
  const json& cj = j.at("curve");
  auto coef = [&](const char* k) { return cj.contains(k) ? scalar_of(f, cj.at(k)) : f.zero(); };
  Curve curve(f, coef("a1"), coef("a2"), coef("a3"), coef("a4"), coef("a6"));
  if (curve.discriminant() == f.zero()) throw std::invalid_argument("config: singular curve");

  Windows win;
  if (j.contains("windows")) {
    const json& w = j.at("windows");
    win.orbit = w.value("orbit", win.orbit);
    win.cp_window = w.value("cp_window", win.cp_window);
    win.truncation = w.value("truncation", win.truncation);
    win.grid = w.value("grid", win.grid);
    win.max_degree = w.value("max_degree", win.max_degree);
  }
  const std::string alpha_name = j.value("alpha", std::string("alpha"));
  const json& pts = j.at("points");
  std::map<std::string, Point> known;
  if (!pts.contains(alpha_name)) throw std::invalid_argument("config: alpha point '" + alpha_name + "' missing");
  known[alpha_name] = resolve_point(curve, known, alpha_name, pts.at(alpha_name), alpha_name);
  // later points may refer to earlier ones; resolve in passes
  std::map<std::string, json> pending;
  for (auto it = pts.begin(); it != pts.end(); ++it)
    if (it.key() != alpha_name) pending[it.key()] = it.value();
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const json& spec = it->second;
      const std::string base = spec.value("base", alpha_name);
      const bool ready = !spec.contains("multiple") ||
                         (known.count(base) && (!spec.contains("plus") || known.count(spec.at("plus").get<std::string>())));
      if (ready) {
        known[it->first] = resolve_point(curve, known, alpha_name, spec, it->first);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress) throw std::invalid_argument("config: unresolvable point references");
  }

  Fixture fx(j.value("fixture", std::string("custom")), Translation(curve, known.at(alpha_name), win.orbit));
  fx.points_ = known;
  fx.win_ = win;
  fx.m_ = fx.parse_divisor(j.at("ample").get<std::string>());
  if (!fx.m_.is_effective() || fx.m_.degree() < 2) throw std::invalid_argument("config: ample divisor must be effective of degree >= 2");
  fx.beta_ = fx.point(j.value("grid_base", std::string("beta")));
  return fx;
}

Fixture Fixture::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return from_json(json::parse(in));
}

const Point& Fixture::point(const std::string& name) const {
  auto it = points_.find(name);
  if (it == points_.end()) throw std::invalid_argument("unknown point '" + name + "'");
  return it->second;
}

Divisor Fixture::parse_divisor(const std::string& text) const { return DivisorParser(*this, text, 0).run(); }

Layering Fixture::parse_layering(const std::string& text) const {
  Side side = Side::right;
  std::size_t start = 0;
  const std::size_t colon = text.find(':');
  if (colon != std::string::npos) {
    std::string tag = text.substr(0, colon);
    tag.erase(0, tag.find_first_not_of(' '));
    tag.erase(tag.find_last_not_of(' ') + 1);
    if (tag == "left") side = Side::left;
    else if (tag != "right") throw ParseError("unknown side '" + tag + "'", 0);
    start = colon + 1;
  }
  std::vector<Divisor> layers;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    layers.push_back(DivisorParser(*this, part, start).run());
    start = end + 1;
  }
  return make_layering(tr_, side, layers);
}

TcrContext Fixture::context(long max_degree) const {
  TcrOptions opt;
  opt.max_degree = max_degree > 0 ? max_degree : win_.max_degree;
  opt.grid_size = win_.grid;
  return TcrContext(tr_, m_, beta_, opt);
}

}  // namespace tcr
