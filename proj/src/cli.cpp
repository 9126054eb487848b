#include "chabauty/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "chabauty/descriptors.hpp"
#include "chabauty/errors.hpp"
#include "chabauty/heisenberg.hpp"
#include "chabauty/invariants.hpp"
#include "chabauty/mahler.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/sphere.hpp"

namespace chabauty::cli {

namespace {

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json point_json(const SpherePoint& p) {
  if (p.infinite) return {{"infinite", true}};
  return {{"infinite", false}, {"a", complex_to_json(p.a)}, {"b", complex_to_json(p.b)}};
}

void apply_config(MetricConfig& cfg, const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (auto& [key, value] : j.items()) {
    if (key == "tol") cfg.tol = parse_real(value);
    else if (key == "eps_min") cfg.eps_min = parse_real(value);
    else if (key == "eps_max") cfg.eps_max = parse_real(value);
    else if (key == "resolution") cfg.resolution = parse_real(value);
    else if (key == "cap") cfg.cap = value.get<std::size_t>();
    else if (key == "work_budget") cfg.work_budget = value.get<std::size_t>();
    else throw ParseError("unknown config key '" + key + "'");
  }
}

// Human-readable rendering: one "key: value" line per top-level field.
std::string render(const json& payload) {
  std::ostringstream out;
  if (!payload.is_object()) {
    out << payload.dump() << "\n";
    return out.str();
  }
  for (auto& [key, value] : payload.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return out.str();
}

// Descriptors given as arguments; a JSON array expands to its elements.
std::vector<json> expand_members(const std::vector<std::string>& args) {
  std::vector<json> out;
  for (const auto& a : args) {
    json j = load_json_argument(a);
    if (j.is_array()) {
      for (auto& e : j) out.push_back(e);
    } else {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<double> to_doubles(const std::vector<std::string>& v) {
  std::vector<double> out;
  for (const auto& s : v) out.push_back(parse_real(json(s)));
  return out;
}

HeisLattice as_heis_lattice(const json& j) {
  HeisSubgroup s = parse_heis(j);
  if (auto* l = std::get_if<HeisSubgroup::Lattice>(&s.data())) return l->lattice;
  throw DomainError("expected a lattice in H, got " + classify_heis(s).label);
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out) throw Error("write failed: " + path);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Chabauty spaces of closed subgroups of R, C and the Heisenberg group", "chabauty"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string config_path;
  double tol_flag = 0;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--config", config_path, "JSON file with metric settings");
  app.add_option("--tol", tol_flag, "tolerance (overrides config)");

  std::string space_text = "C";
  auto add_space = [&](CLI::App* sub) { sub->add_option("--space", space_text, "R, C or H")->capture_default_str(); };

  // classify
  std::string desc_a, desc_b;
  auto* classify = app.add_subcommand("classify", "canonical form and stratum of a closed subgroup");
  add_space(classify);
  classify->add_option("descriptor", desc_a)->required();

  // dist
  std::string request;
  auto* dist = app.add_subcommand("dist", "Chabauty distance by bisection");
  add_space(dist);
  dist->add_option("lhs", desc_a);
  dist->add_option("rhs", desc_b);
  dist->add_option("--request", request, "{\"space\", \"lhs\", \"rhs\", \"tol\"} as JSON or file");

  // limit
  std::string limit_desc;
  std::vector<std::string> members;
  double radius = 6, delta = 0.25;
  long horizon = 0, start_index = 1;
  long ex11_n = 0, k_from = 1, k_to = 1;
  auto* limit = app.add_subcommand("limit", "finite-scale convergence check");
  add_space(limit);
  limit->add_option("--limit", limit_desc, "descriptor of the limit")->required();
  limit->add_option("members", members, "family members (descriptors or JSON arrays)");
  limit->add_option("--radius", radius)->capture_default_str();
  limit->add_option("--delta", delta)->capture_default_str();
  limit->add_option("--horizon", horizon, "check members with index >= horizon")->capture_default_str();
  limit->add_option("--start-index", start_index, "index of the first member")->capture_default_str();
  limit->add_option("--example11", ex11_n, "use the sheared family Lambda_k with this n, k in [k-from, k-to]");
  limit->add_option("--k-from", k_from)->capture_default_str();
  limit->add_option("--k-to", k_to)->capture_default_str();

  // nbhd
  double k_radius = 2, u_radius = 0.5;
  auto* nbhd = app.add_subcommand("nbhd", "is D in the (K, U) neighbourhood of C");
  add_space(nbhd);
  nbhd->add_option("C", desc_a)->required();
  nbhd->add_option("D", desc_b)->required();
  nbhd->add_option("--k-radius", k_radius)->capture_default_str();
  nbhd->add_option("--u-radius", u_radius)->capture_default_str();

  // mahler
  double covol_bound = 1.5, min_norm_bound = 0.9, volume_bound = 2;
  auto* mahler = app.add_subcommand("mahler", "relative compactness verdict for a family of lattices");
  add_space(mahler);
  mahler->add_option("members", members)->required();
  mahler->add_option("--covol-bound", covol_bound)->capture_default_str();
  mahler->add_option("--min-norm-bound", min_norm_bound)->capture_default_str();
  mahler->add_option("--volume-bound", volume_bound)->capture_default_str();
  mahler->add_option("--u-radius", u_radius)->capture_default_str();

  // invariants
  std::vector<std::string> invert;
  std::string method = "qseries";
  auto* inv = app.add_subcommand("invariants", "g2, g3, Delta, j of a lattice, or the inverse map");
  inv->add_option("descriptor", desc_a);
  inv->add_option("--invert", invert, "a_re a_im b_re b_im")->expected(4);
  inv->add_option("--method", method, "qseries or shells")->check(CLI::IsMember({"qseries", "shells"}));

  // sphere
  std::vector<std::string> coords;
  bool at_infinity = false;
  auto* sfwd = app.add_subcommand("sphere-fwd", "the point (a, b) of S^4 to its closed subgroup of C");
  sfwd->add_option("coords", coords, "a_re a_im b_re b_im")->expected(4);
  sfwd->add_flag("--infinity", at_infinity);
  auto* sinv = app.add_subcommand("sphere-inv", "a closed subgroup of C to its point of S^4");
  sinv->add_option("descriptor", desc_a)->required();

  // heis
  long n = 1, k = 1;
  std::vector<std::string> matrix, inner, element;
  auto* heis = app.add_subcommand("heis", "Heisenberg lattice operations");
  heis->require_subcommand(1);
  auto* make_lambda = heis->add_subcommand("make-lambda", "the lattice Lambda_n");
  make_lambda->add_option("--n", n)->capture_default_str();
  auto* member = heis->add_subcommand("member", "membership of [x, y, t] in a lattice");
  member->add_option("lattice", desc_a)->required();
  member->add_option("element", desc_b, "[x, y, t]")->required();
  auto* comm = heis->add_subcommand("commutator", "[Lambda, Lambda]");
  comm->add_option("lattice", desc_a)->required();
  auto* index = heis->add_subcommand("index", "centre index n");
  index->add_option("lattice", desc_a)->required();
  auto* aut = heis->add_subcommand("aut", "image of a lattice under an automorphism");
  aut->add_option("lattice", desc_a)->required();
  aut->add_option("--matrix", matrix, "a b c d")->expected(4)->required();
  aut->add_option("--inner", inner, "wx wy")->expected(2);
  auto* ex11 = heis->add_subcommand("example11", "the lattice generated by (1,0), (-1/k,1), (-i k^2 n,0)");
  ex11->add_option("--n", n)->capture_default_str();
  ex11->add_option("--k", k)->capture_default_str();

  // emit-plot
  std::string out_path;
  std::size_t samples = 360, grid = 21;
  std::string axis = "a";
  long k_max = 32;
  auto* plot = app.add_subcommand("emit-plot", "CSV data for plots");
  plot->require_subcommand(1);
  auto* trefoil = plot->add_subcommand("trefoil", "points of the trefoil on S^3");
  trefoil->add_option("--samples", samples)->capture_default_str();
  trefoil->add_option("--out", out_path)->required();
  auto* strata = plot->add_subcommand("strata-sample", "stratum labels of f on a grid");
  strata->add_option("--grid", grid)->capture_default_str();
  strata->add_option("--axis", axis, "a: b = 0; b: a = 0; plane: real (a, b)")
      ->check(CLI::IsMember({"a", "b", "plane"}))
      ->capture_default_str();
  strata->add_option("--out", out_path)->required();
  auto* trace = plot->add_subcommand("example11-trace", "(k, distance to A) for k = 1..k-max");
  trace->add_option("--n", n)->capture_default_str();
  trace->add_option("--k-max", k_max)->capture_default_str();
  trace->add_option("--out", out_path)->required();

  // Global options may follow the subcommand.
  std::function<void(CLI::App*)> pass_up = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough();
      pass_up(sub);
    }
  };
  pass_up(&app);

  CommandResult result;
  auto fail = [&](int code, const std::string& kind, const std::string& msg, json extra = json::object()) {
    result.exit_code = code;
    json p = {{"error", kind}, {"code", code}, {"message", msg}};
    p.update(extra);
    result.payload = p;
    result.error = as_json ? p.dump() + "\n" : kind + ": " + msg + "\n";
    return result;
  };

  std::vector<std::string> argv_store{"chabauty"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.text = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.text = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  try {
    MetricConfig cfg;
    if (!config_path.empty()) apply_config(cfg, load_json_argument(config_path));
    if (tol_flag > 0) cfg.tol = tol_flag;
    cfg.validate();
    Space space = parse_space(space_text);
    json out;

    if (*classify) {
      AnySubgroup s = parse_descriptor(space, load_json_argument(desc_a));
      out = {{"space", space_name(space)}, {"descriptor", to_json(s)}};
      if (auto* r = std::get_if<ClosedSubgroupR>(&s)) {
        out["stratum"] = kind_name(r->kind());
        if (r->kind() == ClosedSubgroupR::Kind::Cyclic) out["step"] = r->step();
      } else if (auto* c = std::get_if<ClosedSubgroupC>(&s)) {
        out["stratum"] = stratum_name(c->stratum());
        if (c->is_lattice()) out["covolume"] = covolume(*c);
        if (c->is_discrete() && c->stratum() != Stratum::Zero) out["min_norm"] = min_norm(*c);
      } else {
        const auto& h = std::get<HeisSubgroup>(s);
        auto cl = classify_heis(h);
        out["stratum"] = heis_stratum_name(cl.stratum);
        out["label"] = cl.label;
        out["abelian"] = h.is_abelian();
        out["projection"] = to_json(projection(h));
        if (auto* l = std::get_if<HeisSubgroup::Lattice>(&h.data())) {
          out["n"] = l->lattice.n;
          out["haar_volume"] = haar_covolume(l->lattice);
        }
      }
    } else if (*dist) {
      json lhs, rhs;
      if (!request.empty()) {
        json req = load_json_argument(request);
        if (req.contains("space")) space = parse_space(req.at("space").get<std::string>());
        if (req.contains("tol")) cfg.tol = parse_real(req.at("tol"));
        if (tol_flag > 0) cfg.tol = tol_flag;
        cfg.validate();
        lhs = req.at("lhs");
        rhs = req.at("rhs");
      } else {
        if (desc_a.empty() || desc_b.empty()) return fail(kUsage, "usage", "dist needs lhs and rhs, or --request");
        lhs = load_json_argument(desc_a);
        rhs = load_json_argument(desc_b);
      }
      auto a = view_of(parse_descriptor(space, lhs));
      auto b = view_of(parse_descriptor(space, rhs));
      DistanceResult d = chabauty_distance(*a, *b, cfg);
      json tr = json::array();
      for (auto [eps, holds] : d.trace) tr.push_back(json::array({eps, holds}));
      out = {{"distance", d.distance}, {"lower", d.lower}, {"tol", cfg.tol}, {"trace", tr}};
    } else if (*limit) {
      std::vector<FamilyMember> seq;
      if (ex11_n > 0) {
        if (space != Space::H) return fail(kUsage, "usage", "--example11 needs --space H");
        for (long kk = k_from; kk <= k_to; ++kk)
          seq.push_back({kk, heis_view(HeisSubgroup::lattice(example11_lattice(ex11_n, kk)))});
      } else {
        long idx = start_index;
        for (const auto& m : expand_members(members)) seq.push_back({idx++, view_of(parse_descriptor(space, m))});
      }
      if (seq.empty()) return fail(kUsage, "usage", "limit needs family members");
      auto lim = view_of(parse_descriptor(space, load_json_argument(limit_desc)));
      LimitConfig lc;
      lc.radius = radius;
      lc.delta = delta;
      lc.horizon = horizon;
      lc.cap = cfg.cap;
      lc.work_budget = cfg.work_budget;
      LimitReport rep = limit_verdict(seq, *lim, lc);
      json wit = json::array();
      for (const auto& w : rep.witnesses)
        wit.push_back({{"index", w.index}, {"condition", std::string(1, w.condition)}, {"point", vec3_json(w.point)},
                       {"distance", w.distance}});
      out = {{"pass", rep.pass}, {"radius", radius}, {"delta", delta}, {"checked", rep.checked}, {"witnesses", wit}};
    } else if (*nbhd) {
      auto c = view_of(parse_descriptor(space, load_json_argument(desc_a)));
      auto d = view_of(parse_descriptor(space, load_json_argument(desc_b)));
      NeighborhoodResult r = neighborhood_check(*c, *d, k_radius, u_radius, cfg.cap);
      out = {{"holds", r.holds}, {"failing_side", r.failing_side}};
      if (r.witness) out["witness"] = vec3_json(r.witness->point);
    } else if (*mahler) {
      auto ms = expand_members(members);
      if (space == Space::C) {
        std::vector<ClosedSubgroupC> fam;
        for (const auto& m : ms) fam.push_back(parse_subgroup_c(m));
        MahlerVerdict v = mahler_verdict(fam, covol_bound, min_norm_bound);
        out = {{"certified", v.certified},         {"bounds_hold", v.bounds_hold},
               {"min_norm_to_zero", v.min_norm_to_zero}, {"covolume_unbounded", v.covolume_unbounded},
               {"sup_covolume", v.sup_covolume},   {"inf_min_norm", v.inf_min_norm},
               {"covolumes", v.covolumes},         {"min_norms", v.min_norms}};
      } else if (space == Space::H) {
        std::vector<HeisLattice> fam;
        for (const auto& m : ms) fam.push_back(as_heis_lattice(m));
        HeisMahlerVerdict v = heis_mahler_verdict(fam, volume_bound, u_radius);
        out = {{"certified", v.certified},       {"volume_growth", v.volume_growth}, {"sup_volume", v.sup_volume},
               {"volumes", v.volumes},           {"shortest", v.shortest},           {"volume_ok", v.volume_ok},
               {"neighborhood_ok", v.neighborhood_ok}};
      } else {
        return fail(kUsage, "usage", "mahler works on C or H");
      }
    } else if (*inv) {
      double t = tol_flag > 0 ? tol_flag : 1e-9;
      if (!invert.empty()) {
        auto v = to_doubles(invert);
        ClosedSubgroupC c = invert_g({v[0], v[1]}, {v[2], v[3]}, t);
        out = {{"descriptor", to_json(c)}, {"stratum", stratum_name(c.stratum())}};
      } else {
        if (desc_a.empty()) return fail(kUsage, "usage", "invariants needs a lattice descriptor or --invert");
        ClosedSubgroupC c = parse_subgroup_c(load_json_argument(desc_a));
        if (c.is_lattice()) {
          double et = tol_flag > 0 ? tol_flag : 1e-10;
          auto li = eisenstein(c, et, method == "shells" ? EisensteinMethod::Shells : EisensteinMethod::QSeries);
          out = {{"g2", complex_to_json(li.g2)}, {"g3", complex_to_json(li.g3)}, {"delta", complex_to_json(li.delta)},
                 {"j", li.has_j ? complex_to_json(li.j) : json(nullptr)}, {"err", li.err}};
        } else {
          auto [a, b] = extended_g_prime(c);
          Complex d = discriminant(a, b);
          out = {{"g2", complex_to_json(a)}, {"g3", complex_to_json(b)}, {"delta", complex_to_json(d)},
                 {"j", nullptr}, {"err", 0.0}};
        }
      }
    } else if (*sfwd) {
      double t = tol_flag > 0 ? tol_flag : 1e-9;
      SpherePoint x = SpherePoint::at_infinity();
      if (!at_infinity) {
        if (coords.size() != 4) return fail(kUsage, "usage", "sphere-fwd needs a_re a_im b_re b_im or --infinity");
        auto v = to_doubles(coords);
        x = SpherePoint::finite({v[0], v[1]}, {v[2], v[3]});
      }
      ClosedSubgroupC c = forward_f(x, t);
      out = {{"descriptor", to_json(c)}, {"stratum", stratum_name(c.stratum())},
             {"curve", curve_membership_name(curve_membership(x, t))}};
      if (c.is_lattice()) out["covolume"] = covolume(c);
    } else if (*sinv) {
      double t = tol_flag > 0 ? tol_flag : 1e-9;
      SpherePoint p = inverse_f(parse_subgroup_c(load_json_argument(desc_a)), t);
      out = point_json(p);
      if (!p.infinite) out["radius"] = p.radius();
    } else if (*heis) {
      if (*make_lambda) {
        out = {{"descriptor", to_json(make_lambda_n(n))}};
      } else if (*member) {
        HeisLattice lat = as_heis_lattice(load_json_argument(desc_a));
        json e = load_json_argument(desc_b);
        if (!e.is_array() || e.size() != 3) throw ParseError("element must be [x, y, t]");
        bool exact = lat.exact && e[0].is_string() && e[1].is_string() && e[2].is_string();
        bool in;
        if (exact) {
          HeisElementQ q{parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>()),
                         parse_rational(e[2].get<std::string>())};
          in = heis_membership(lat, q);
        } else {
          in = heis_membership(lat, HeisElement{parse_real(e[0]), parse_real(e[1]), parse_real(e[2])});
        }
        out = {{"member", in}, {"exact", exact}};
      } else if (*comm) {
        HeisLattice lat = as_heis_lattice(load_json_argument(desc_a));
        out = {{"descriptor", to_json(HeisSubgroup::central(commutator_subgroup(lat)))},
               {"step", commutator_subgroup(lat).step()}};
      } else if (*index) {
        HeisLattice lat = as_heis_lattice(load_json_argument(desc_a));
        out = {{"index", center_index(lat)}, {"center_step", lat.central_step()}};
      } else if (*aut) {
        HeisLattice lat = as_heis_lattice(load_json_argument(desc_a));
        auto m = to_doubles(matrix);
        auto w = inner.empty() ? std::vector<double>{0, 0} : to_doubles(inner);
        auto a = HeisAutomorphism::make({m[0], m[1], m[2], m[3]}, w[0], w[1]);
        HeisLattice img = aut_apply_lattice(a, lat);
        out = {{"descriptor", to_json(img)}, {"n", img.n}};
      } else if (*ex11) {
        HeisLattice lat = example11_lattice(n, k);
        out = {{"descriptor", to_json(lat)}, {"n", lat.n}, {"label", classify_heis(HeisSubgroup::lattice(lat)).label}};
      }
    } else if (*plot) {
      std::vector<std::string> rows;
      if (*trefoil) {
        for (const auto& p : trefoil_samples(samples))
          rows.push_back(fmt(p.a.real()) + "," + fmt(p.a.imag()) + "," + fmt(p.b.real()) + "," + fmt(p.b.imag()));
        write_csv(out_path, "a_re,a_im,b_re,b_im", rows);
      } else if (*strata) {
        if (grid < 2) return fail(kUsage, "usage", "--grid must be at least 2");
        const double span = 2.0;
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < grid; ++i) {
          double s = span * double(i) / double(grid - 1);
          if (axis == "a") pts.push_back({s, 0});
          else if (axis == "b") pts.push_back({0, s});
          else
            for (std::size_t j = 0; j < grid; ++j) pts.push_back({s, span * double(j) / double(grid - 1)});
        }
        for (auto [a, b] : pts) {
          ClosedSubgroupC c = forward_f(SpherePoint::finite(a, b));
          double cv = c.is_lattice() ? covolume(c) : (c.stratum() == Stratum::Full ? 0.0 : kInfinity);
          rows.push_back(fmt(a) + ",0," + fmt(b) + ",0," + stratum_name(c.stratum()) + "," + fmt(cv));
        }
        write_csv(out_path, "a_re,a_im,b_re,b_im,stratum,covol", rows);
      } else if (*trace) {
        auto a = heis_view(HeisSubgroup::planar({1, 0}, ClosedSubgroupC::lattice({1, 0}, {0, 1})));
        for (long kk = 1; kk <= k_max; ++kk) {
          auto lk = heis_view(HeisSubgroup::lattice(example11_lattice(n, kk)));
          rows.push_back(std::to_string(kk) + "," + fmt(chabauty_distance(*lk, *a, cfg).distance));
        }
        write_csv(out_path, "k,distance", rows);
      }
      out = {{"file", out_path}, {"rows", rows.size()}};
    }

    result.payload = out;
    result.text = as_json ? out.dump(2) + "\n" : render(out);
    return result;
  } catch (const ParseError& e) {
    return fail(kParse, "parse", e.what());
  } catch (const NumericFailure& e) {
    return fail(kNumeric, "numeric", e.what(), {{"residual", e.residual()}});
  } catch (const EnumerationOverflow& e) {
    return fail(kNumeric, "overflow", e.what());
  } catch (const DomainError& e) {
    return fail(kUsage, "domain", e.what());
  } catch (const json::exception& e) {
    return fail(kParse, "parse", e.what());
  } catch (const Error& e) {
    return fail(kUsage, "error", e.what());
  }
}

}  // namespace chabauty::cli
