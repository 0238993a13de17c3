#include "carsym/json_io.hpp"

#include <fstream>
#include <set>

namespace carsym {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw DomainError("expected a JSON object");
  for (const auto& key : required) {
    if (!j.contains(key)) throw DomainError("missing key '" + key + "'");
  }
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key)) throw DomainError("unknown key '" + key + "'");
  }
}

Dyadic dyadic_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Dyadic(j.get<std::int64_t>());
  if (j.is_string()) return Dyadic::parse(j.get<std::string>());
  throw DomainError("expected a dyadic (integer or \"p/q\" string)");
}

}  // namespace

nlohmann::ordered_json complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

nlohmann::ordered_json spreading_json(const SpreadingMap& f) {
  return {{"shift", f.shift()}, {"skipped", f.skipped()}};
}

SpreadingMap spreading_from_json(const nlohmann::json& j) {
  require_keys(j, {"shift", "skipped"});
  return SpreadingMap(j.at("shift").get<std::int64_t>(), j.at("skipped").get<std::vector<std::int64_t>>());
}

nlohmann::ordered_json pl_json(const PLDyadicMap& m) {
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.breakpoints().size(); ++i) {
    const auto& p = m.pieces()[i + 1];
    pieces.push_back({{"breakpoint", m.breakpoints()[i].str()},
                      {"slope", Dyadic(1).times_pow2(p.slope_exp).str()},
                      {"offset", p.offset.str()}});
  }
  return {{"first_offset", m.pieces().front().offset.str()}, {"pieces", pieces}};
}

PLDyadicMap pl_from_json(const nlohmann::json& j) {
  require_keys(j, {"first_offset", "pieces"});
  std::vector<Dyadic> breakpoints;
  std::vector<PLDyadicMap::Piece> pieces{PLDyadicMap::Piece{0, dyadic_from_json(j.at("first_offset"))}};
  for (const auto& pj : j.at("pieces")) {
    require_keys(pj, {"breakpoint", "slope", "offset"});
    Dyadic slope = dyadic_from_json(pj.at("slope"));
    int slope_exp;
    if (slope.exp() > 0) {
      if (slope.num() != 1) throw DomainError("slope must be a power of two");
      slope_exp = -int(slope.exp());
    } else {
      std::int64_t v = slope.num();
      if (v <= 0 || (v & (v - 1)) != 0) throw DomainError("slope must be a power of two");
      slope_exp = 0;
      while (v > 1) {
        v /= 2;
        ++slope_exp;
      }
    }
    breakpoints.push_back(dyadic_from_json(pj.at("breakpoint")));
    pieces.push_back(PLDyadicMap::Piece{slope_exp, dyadic_from_json(pj.at("offset"))});
  }
  return PLDyadicMap(std::move(breakpoints), std::move(pieces));
}

nlohmann::ordered_json orthogonal_json(const OrthogonalWindowMatrix& o) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < o.entries().rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < o.entries().cols(); ++c) row.push_back(o.entries()(r, c));
    rows.push_back(row);
  }
  return {{"window", o.window()}, {"rows", rows}};
}

OrthogonalWindowMatrix orthogonal_from_json(const nlohmann::json& j) {
  require_keys(j, {"window", "rows"});
  auto window = j.at("window").get<std::vector<std::int64_t>>();
  const auto& rows = j.at("rows");
  Eigen::MatrixXd m(window.size(), window.size());
  if (rows.size() != window.size()) throw DomainError("row count does not match the window");
  for (std::size_t r = 0; r < window.size(); ++r) {
    if (rows[r].size() != window.size()) throw DomainError("row length does not match the window");
    for (std::size_t c = 0; c < window.size(); ++c) m(r, c) = rows[r][c].get<double>();
  }
  return OrthogonalWindowMatrix(std::move(window), std::move(m));
}

StatePtr state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) throw DomainError("state descriptor needs a 'type' key");
  std::string type = j.at("type").get<std::string>();
  if (type == "product") {
    require_keys(j, {"type", "mu"});
    return product_state(j.at("mu").get<double>());
  }
  if (type == "toeplitz") {
    require_keys(j, {"type", "q"});
    std::map<std::int64_t, double> q;
    for (const auto& [key, value] : j.at("q").items()) {
      q[std::stoll(key)] = value.get<double>();
    }
    return QuasiFreeState::toeplitz(std::move(q));
  }
  if (type == "window") {
    require_keys(j, {"type", "window", "rows"}, {"default_diag"});
    auto window = j.at("window").get<std::vector<std::int64_t>>();
    const auto& rows = j.at("rows");
    Eigen::MatrixXd m(window.size(), window.size());
    if (rows.size() != window.size()) throw DomainError("row count does not match the window");
    for (std::size_t r = 0; r < window.size(); ++r) {
      for (std::size_t c = 0; c < window.size(); ++c) m(r, c) = rows[r][c].get<double>();
    }
    std::optional<double> default_diag;
    if (j.contains("default_diag")) default_diag = j.at("default_diag").get<double>();
    return QuasiFreeState::window(std::move(window), std::move(m), default_diag);
  }
  if (type == "mixture") {
    require_keys(j, {"type", "parts"});
    std::vector<std::pair<double, StatePtr>> parts;
    for (const auto& part : j.at("parts")) {
      if (!part.is_array() || part.size() != 2) throw DomainError("mixture parts must be [weight, state] pairs");
      parts.emplace_back(part[0].get<double>(), state_from_json(part[1]));
    }
    return mixture(std::move(parts));
  }
  if (type == "pullback") {
    require_keys(j, {"type", "n", "base"});
    return pullback(state_from_json(j.at("base")), j.at("n").get<unsigned>());
  }
  throw DomainError("unknown state type '" + type + "'");
}

StatePtr state_from_descriptor(const std::string& text) {
  if (!text.empty() && text.front() == '{') return state_from_json(nlohmann::json::parse(text));
  if (text == "vacuum") return vacuum_state();
  if (text.rfind("product:", 0) == 0) return product_state(std::stod(text.substr(8)));
  if (text.rfind("toeplitz:", 0) == 0) {
    std::string rest = text.substr(9);
    if (!rest.empty() && rest.front() == '{') {
      nlohmann::json q = nlohmann::json::parse(rest);
      return state_from_json({{"type", "toeplitz"}, {"q", q}});
    }
    std::ifstream in(rest);
    if (!in) throw DomainError("cannot open state file '" + rest + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("type")) return state_from_json(j);
    return state_from_json({{"type", "toeplitz"}, {"q", j.at("q")}});
  }
  std::ifstream in(text);
  if (in) return state_from_json(nlohmann::json::parse(in));
  throw DomainError("unrecognized state descriptor '" + text + "'");
}

}  // namespace carsym
