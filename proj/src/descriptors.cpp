#include "chabauty/descriptors.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "chabauty/closure.hpp"
#include "chabauty/errors.hpp"
#include "chabauty/spaces.hpp"

namespace chabauty {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("descriptor is missing '") + key + "'");
  return j.at(key);
}

// Exact scalars: strings or JSON integers. Floats are refused.
SurdNumber parse_surd(const json& j) {
  if (j.is_number_integer()) return SurdNumber(j.get<long long>());
  if (j.is_string()) return SurdNumber::parse(j.get<std::string>());
  throw ParseError("exact value expected (string or integer), got " + j.dump());
}

Rational parse_exact_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("exact rational expected (string or integer), got " + j.dump());
}

bool is_exact_scalar(const json& j) { return j.is_string() || j.is_number_integer(); }

bool is_exact_pair(const json& j) { return j.is_array() && j.size() == 2 && is_exact_scalar(j[0]) && is_exact_scalar(j[1]); }

json exact_json(const Rational& q) { return to_string(q); }

}  // namespace

Space parse_space(const std::string& s) {
  if (s == "R") return Space::R;
  if (s == "C") return Space::C;
  if (s == "H") return Space::H;
  throw ParseError("unknown space '" + s + "' (expected R, C or H)");
}

std::string space_name(Space s) {
  switch (s) {
    case Space::R: return "R";
    case Space::C: return "C";
    case Space::H: return "H";
  }
  return "?";
}

json load_json_argument(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  std::string body = text;
  if (first == std::string::npos) throw ParseError("empty descriptor");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw ParseError("not inline JSON and no such file: " + text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    return SurdNumber::parse(s).to_double();
  }
  throw ParseError("number expected, got " + j.dump());
}

Complex parse_complex(const json& j) {
  if (j.is_array() && j.size() == 2) return {parse_real(j[0]), parse_real(j[1])};
  if (j.is_number() || j.is_string()) return {parse_real(j), 0};
  throw ParseError("complex number [re, im] expected, got " + j.dump());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------- R

ClosedSubgroupR parse_subgroup_r(const json& j) {
  if (!j.is_object()) throw ParseError("R descriptor must be an object");
  try {
    if (j.contains("trivial")) return ClosedSubgroupR::trivial();
    if (j.contains("full")) return ClosedSubgroupR::full();
    if (j.contains("cyclic")) return ClosedSubgroupR::cyclic(parse_real(j.at("cyclic")));
    if (j.contains("param")) return ClosedSubgroupR::from_parameter(parse_real(j.at("param")));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("R descriptor needs one of trivial, cyclic, full, param: " + j.dump());
}

json to_json(const ClosedSubgroupR& c) {
  switch (c.kind()) {
    case ClosedSubgroupR::Kind::Trivial: return {{"trivial", true}};
    case ClosedSubgroupR::Kind::Cyclic: return {{"cyclic", c.step()}};
    case ClosedSubgroupR::Kind::Full: return {{"full", true}};
  }
  return {};
}

// ---------------------------------------------------------------- C

ClosedSubgroupC parse_subgroup_c(const json& j) {
  if (!j.is_object()) throw ParseError("C descriptor must be an object");
  if (j.contains("gens")) {
    const json& g = j.at("gens");
    if (!g.is_array()) throw ParseError("gens must be an array of [x, y] pairs");
    std::vector<ExactVector> gens;
    for (const auto& p : g) {
      if (!is_exact_pair(p)) throw ParseError("generators must be exact [x, y] strings, got " + p.dump());
      gens.push_back({parse_surd(p[0]), parse_surd(p[1])});
    }
    return closure_of_generated(std::span<const ExactVector>(gens));
  }
  Stratum s = parse_stratum_name(field(j, "stratum").get<std::string>());
  try {
    switch (s) {
      case Stratum::Zero: return ClosedSubgroupC::zero();
      case Stratum::Full: return ClosedSubgroupC::full();
      case Stratum::Cyclic: return ClosedSubgroupC::cyclic(parse_complex(field(j, "omega")));
      case Stratum::Line: return ClosedSubgroupC::line(parse_complex(field(j, "u")));
      case Stratum::LineCyclic:
        return ClosedSubgroupC::line_cyclic(parse_complex(field(j, "u")), parse_complex(field(j, "v")));
      case Stratum::Lattice: return ClosedSubgroupC::lattice(parse_complex(field(j, "z")), parse_complex(field(j, "zp")));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("bad C descriptor");
}

json to_json(const ClosedSubgroupC& c) {
  json out = {{"stratum", stratum_name(c.stratum())}};
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ClosedSubgroupC::Cyclic>) {
          out["omega"] = complex_to_json(d.omega);
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Line>) {
          out["u"] = complex_to_json(d.u);
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::LineCyclic>) {
          out["u"] = complex_to_json(d.u);
          out["v"] = complex_to_json(d.v);
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Lattice>) {
          out["z"] = complex_to_json(d.z);
          out["zp"] = complex_to_json(d.zp);
        }
      },
      c.data());
  return out;
}

// ---------------------------------------------------------------- H

HeisLattice parse_heis_lattice(const json& j) {
  long long n = 1;
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 1) throw ParseError("n must be a positive integer");
    n = j.at("n").get<long long>();
  }
  const json& z = field(j, "z");
  const json& zp = field(j, "zp");
  json t = j.value("t", json(0));
  json tp = j.value("tp", json(0));
  try {
    if (is_exact_pair(z) && is_exact_pair(zp) && is_exact_scalar(t) && is_exact_scalar(tp)) {
      HeisElementQ l1{parse_exact_rational(z[0]), parse_exact_rational(z[1]), parse_exact_rational(t)};
      HeisElementQ l2{parse_exact_rational(zp[0]), parse_exact_rational(zp[1]), parse_exact_rational(tp)};
      Rational covol = abs(l1.x * l2.y - l1.y * l2.x);
      if (covol == 0) throw DomainError("projected basis is degenerate");
      std::vector<HeisElementQ> gens{l1, l2, {Rational(0), Rational(0), covol / n}};
      HeisLattice lat = heis_lattice_from_generators(std::span<const HeisElementQ>(gens));
      if (lat.n != n) throw ParseError("lifts are inconsistent with n = " + std::to_string(n));
      return lat;
    }
    return make_heis_lattice(parse_complex(z), parse_complex(zp), parse_real(t), parse_real(tp), n);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const HeisLattice& lat) {
  json out = {{"kind", "heis-lattice"}, {"n", lat.n}};
  if (lat.exact) {
    const auto& e = *lat.exact;
    out["z"] = json::array({exact_json(e.lift.x), exact_json(e.lift.y)});
    out["zp"] = json::array({exact_json(e.lift_prime.x), exact_json(e.lift_prime.y)});
    out["t"] = exact_json(e.lift.t);
    out["tp"] = exact_json(e.lift_prime.t);
  } else {
    out["z"] = complex_to_json(lat.z);
    out["zp"] = complex_to_json(lat.zp);
    out["t"] = lat.t;
    out["tp"] = lat.tp;
  }
  return out;
}

HeisSubgroup parse_heis(const json& j) {
  if (!j.is_object()) throw ParseError("H descriptor must be an object");
  const std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "heis-lattice") return HeisSubgroup::lattice(parse_heis_lattice(j));
    if (kind == "trivial") return HeisSubgroup::trivial();
    if (kind == "full") return HeisSubgroup::whole();
    if (kind == "central") return HeisSubgroup::central(parse_subgroup_r(field(j, "sub")));
    if (kind == "planar") return HeisSubgroup::planar(parse_complex(field(j, "u")), parse_subgroup_c(field(j, "sub")));
    if (kind == "pullback") return HeisSubgroup::pullback(parse_subgroup_c(field(j, "base")));
    if (kind == "heis-gens") {
      const json& g = field(j, "gens");
      if (!g.is_array()) throw ParseError("gens must be an array of [x, y, t] triples");
      std::vector<HeisElementQ> gens;
      for (const auto& p : g) {
        if (!p.is_array() || p.size() != 3) throw ParseError("generator must be [x, y, t], got " + p.dump());
        gens.push_back({parse_exact_rational(p[0]), parse_exact_rational(p[1]), parse_exact_rational(p[2])});
      }
      return closure_of_generated(std::span<const HeisElementQ>(gens));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown H descriptor kind '" + kind + "'");
}

json to_json(const HeisSubgroup& s) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial>) {
          return {{"kind", "trivial"}};
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Central>) {
          return {{"kind", "central"}, {"sub", to_json(d.sub)}};
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Planar>) {
          return {{"kind", "planar"}, {"u", complex_to_json(d.u)}, {"sub", to_json(d.sub)}};
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          if (d.base.stratum() == Stratum::Full) return {{"kind", "full"}};
          return {{"kind", "pullback"}, {"base", to_json(d.base)}};
        } else {
          return to_json(d.lattice);
        }
      },
      s.data());
}

// ---------------------------------------------------------------- any

AnySubgroup parse_descriptor(Space space, const json& j) {
  switch (space) {
    case Space::R: return parse_subgroup_r(j);
    case Space::C: return parse_subgroup_c(j);
    case Space::H: return parse_heis(j);
  }
  throw ParseError("bad space");
}

json to_json(const AnySubgroup& s) {
  return std::visit([](const auto& x) { return to_json(x); }, s);
}

std::shared_ptr<const SetView> view_of(const AnySubgroup& s) {
  return std::visit(
      [](const auto& x) -> std::shared_ptr<const SetView> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ClosedSubgroupR>) {
          return real_view(x);
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC>) {
          return complex_view(x);
        } else {
          return heis_view(x);
        }
      },
      s);
}

}  // namespace chabauty
