#include "rhwb/cli/app.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include "rhwb/errors.hpp"
#include "rhwb/io/json.hpp"
#include "rhwb/parallel.hpp"

namespace rhwb::cli {

namespace {

using io::Json;

enum class Kind { count, integer, seed, real, positive_real, text, real_list, boolean };

struct Key {
  const char* name;
  const char* flag;
  Kind kind;
  const char* help;
};

// Inline flags map one-to-one onto config keys.
const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"seed", "--seed", Kind::seed, "Master seed"},
      {"trials", "--trials", Kind::count, "Number of random trials"},
      {"out", "--out", Kind::text, "Report path (stdout when absent)"},
      {"format", "--format", Kind::text, "json or csv"},
      {"threads", "--threads", Kind::integer, "Worker cap (0 = all)"},
      {"genus", "--genus", Kind::integer, "Genus (curves: branch points 0..2g)"},
      {"algebra", "--algebra", Kind::text, "sl2, gl2 or sl3"},
      {"w_dim", "--w-dim", Kind::count, "Dimension of the random subspace"},
      {"coefficient_bound", "--coefficient-bound", Kind::count, "Bound on sampled integer coefficients"},
      {"ode_tol", "--ode-tol", Kind::positive_real, "Local error target of the integrator"},
      {"clearance", "--clearance", Kind::positive_real, "Loop distance from branch points"},
      {"relation_tol", "--relation-tol", Kind::positive_real, "Surface-relation tolerance"},
      {"det_tol", "--det-tol", Kind::positive_real, "Determinant tolerance"},
      {"irreducibility_tol", "--irreducibility-tol", Kind::positive_real, "Common-eigenvector tolerance"},
      {"rank_rel_tol", "--rank-rel-tol", Kind::positive_real, "Smallest singular value ratio counted"},
      {"fd_steps", "--fd-steps", Kind::real_list, "Finite-difference steps, comma separated"},
      {"free_gauge", "--free-gauge", Kind::boolean, "Do not freeze the gauge slice"},
  };
  return table;
}

const Key& key(const std::string& name) {
  for (const auto& k : keys())
    if (name == k.name) return k;
  throw std::logic_error("unknown key " + name);
}

const std::map<std::string, std::vector<std::string>>& subcommand_keys() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"noether", {"curve", "genus"}},
      {"lazarsfeld", {"curve", "genus", "trials", "w_dim"}},
      {"criterion", {"curve", "genus", "algebra", "system", "coefficient_bound"}},
      {"dims", {"genus", "algebra"}},
      {"monodromy",
       {"curve", "genus", "system", "coefficient_bound", "ode_tol", "clearance", "relation_tol", "det_tol",
        "irreducibility_tol"}},
      {"immersion",
       {"curve", "genus", "system", "coefficient_bound", "ode_tol", "clearance", "relation_tol", "det_tol",
        "rank_rel_tol", "fd_steps", "free_gauge"}},
  };
  return table;
}

Json defaults(const std::string& sub) {
  Json j;
  j["subcommand"] = sub;
  j["seed"] = 1;
  j["format"] = "json";
  j["threads"] = 0;
  if (sub == "lazarsfeld") {
    j["trials"] = 100;
    j["w_dim"] = 3;
  } else if (sub == "criterion") {
    j["algebra"] = "sl2";
    j["system"] = nullptr;
    j["coefficient_bound"] = 5;
  } else if (sub == "dims") {
    j["genus"] = 2;
    j["algebra"] = "sl2";
  } else if (sub == "monodromy" || sub == "immersion") {
    j["system"] = nullptr;
    j["coefficient_bound"] = 1;
    j["ode_tol"] = 1e-12;
    j["clearance"] = 0.25;
    j["relation_tol"] = 1e-8;
    j["det_tol"] = 1e-10;
    if (sub == "monodromy") {
      j["irreducibility_tol"] = 1e-6;
    } else {
      j["rank_rel_tol"] = 1e-6;
      j["fd_steps"] = Json::array({1e-6});
      j["free_gauge"] = false;
    }
  }
  return j;
}

Json default_curve(const std::string& sub) {
  if (sub == "lazarsfeld") return io::curve_to_json(PlaneQuartic::fermat());
  if (sub == "monodromy" || sub == "immersion") {
    return io::curve_to_json(HyperellipticCurve({0, 1, 4, 9, 16}));
  }
  return io::curve_to_json(HyperellipticCurve::consecutive(2));
}

// Type check of one config value; returns it normalized.
Json checked(const std::string& name, const Json& v) {
  if (name == "curve" || name == "system") {
    if (!(v.is_object() || (name == "system" && v.is_null()))) throw ValidationError(name + ": expected an object");
    return v;
  }
  if (name == "subcommand") return v;
  const Key& k = key(name);
  switch (k.kind) {
    case Kind::count:
      if (!v.is_number_integer() || v.get<long long>() < 1) throw ValidationError(name + ": must be a positive integer");
      return v;
    case Kind::integer:
      if (!v.is_number_integer()) throw ValidationError(name + ": must be an integer");
      return v;
    case Kind::seed:
      if (!v.is_number_unsigned()) throw ValidationError(name + ": must be a non-negative integer");
      return v;
    case Kind::real:
    case Kind::positive_real:
      if (!v.is_number() || !std::isfinite(v.get<double>())) throw ValidationError(name + ": must be a number");
      if (k.kind == Kind::positive_real && !(v.get<double>() > 0.0)) throw ValidationError(name + ": must be positive");
      return Json(v.get<double>());
    case Kind::text:
      if (!v.is_string()) throw ValidationError(name + ": must be a string");
      return v;
    case Kind::real_list: {
      if (!v.is_array() || v.empty()) throw ValidationError(name + ": must be a non-empty list of numbers");
      Json out = Json::array();
      for (const auto& x : v) {
        if (!x.is_number() || !(x.get<double>() > 0.0) || !std::isfinite(x.get<double>())) {
          throw ValidationError(name + ": every entry must be a positive number");
        }
        out.push_back(x.get<double>());
      }
      return out;
    }
    case Kind::boolean:
      if (!v.is_boolean()) throw ValidationError(name + ": must be true or false");
      return v;
  }
  return v;
}

Json parse_inline(const Key& k, const std::string& text) {
  const std::string name = k.name;
  auto fail = [&](const std::string& what) { return ValidationError(name + ": " + what + " ('" + text + "')"); };
  try {
    std::size_t used = 0;
    switch (k.kind) {
      case Kind::count:
      case Kind::integer: {
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw fail("not an integer");
        return checked(name, Json(v));
      }
      case Kind::seed: {
        if (!text.empty() && text[0] == '-') throw fail("must be a non-negative integer");
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw fail("not an integer");
        return Json(static_cast<std::uint64_t>(v));
      }
      case Kind::real:
      case Kind::positive_real: {
        const double v = std::stod(text, &used);
        if (used != text.size()) throw fail("not a number");
        return checked(name, Json(v));
      }
      case Kind::text:
        return Json(text);
      case Kind::real_list: {
        Json list = Json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const double v = std::stod(item, &used);
          if (used != item.size()) throw fail("not a number list");
          list.push_back(v);
        }
        return checked(name, list);
      }
      case Kind::boolean:
        return Json(true);
    }
  } catch (const std::invalid_argument&) {
    throw fail("not a number");
  } catch (const std::out_of_range&) {
    throw fail("out of range");
  }
  return Json();
}

ExactScalar parse_rational(const std::string& text, const std::string& field) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw ValidationError(field + ": not a rational ('" + text + "')");
  if (q.get_den() == 0) throw ValidationError(field + ": zero denominator");
  q.canonicalize();
  return ExactScalar(q);
}

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  try {
    Json j = Json::parse(in);
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON (") + e.what() + ")");
  }
}

Json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ValidationError(field + ": cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(field + ": malformed JSON (" + e.what() + ")");
  }
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest round-trip decimal form.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Outcome {
  Json result;
  std::string csv;
  int status = kExitSuccess;
  std::string message;
};

Curve config_curve(const Json& config) { return io::curve_from_json(config.at("curve"), "curve"); }

std::uint64_t config_seed(const Json& config) { return config.at("seed").get<std::uint64_t>(); }

Outcome run_noether(const Json& config) {
  const Curve curve = config_curve(config);
  Outcome o;
  const auto ambient = canonical_basis(curve);
  const auto m = theta_matrix(curve, SubspaceSelection::full(ambient));
  o.result = io::noether_to_json(noether_check(curve), m);
  return o;
}

Outcome run_lazarsfeld(const Json& config) {
  const Curve curve = config_curve(config);
  const auto w_dim = config.at("w_dim").get<std::size_t>();
  if (w_dim > static_cast<std::size_t>(curve.genus())) {
    throw ValidationError("w_dim: must not exceed the genus (" + std::to_string(curve.genus()) + ")");
  }
  const auto report = lazarsfeld_scan(curve, config.at("trials").get<std::size_t>(), w_dim, config_seed(config));
  Outcome o;
  o.result = io::scan_to_json(report);
  std::ostringstream csv;
  csv << "trials,successes,w_dim,seed,target_rank\n"
      << report.trials << ',' << report.successes << ',' << report.w_dim << ',' << report.seed << ','
      << report.target_rank << '\n';
  o.csv = csv.str();
  return o;
}

DifferentialSystem config_system(const Json& config, const Curve& curve, const LieAlgebra& algebra,
                                 bool immersion_center) {
  if (!config.at("system").is_null()) return io::system_from_json(config.at("system"), curve, "system");
  const long bound = config.at("coefficient_bound").get<long>();
  if (immersion_center) return sample_center(curve, config_seed(config), bound);
  return sample_system(curve, algebra, config_seed(config), bound);
}

Outcome run_criterion(const Json& config) {
  const Curve curve = config_curve(config);
  const LieAlgebra algebra = io::algebra_from_json(config.at("algebra"), "algebra");
  const auto system = config_system(config, curve, algebra, false);
  Outcome o;
  o.result["system"] = io::system_to_json(system);
  o.result["criterion"] = io::criterion_to_json(criterion_injective(curve, system));
  const auto dyad = dyad_detect(system);
  o.result["dyad"] = {{"is_dyad", dyad.is_dyad}, {"rank_of_coefficients", dyad.rank_of_coefficients}};
  return o;
}

Outcome run_dims(const Json& config) {
  const int genus = config.at("genus").get<int>();
  if (genus < 2) throw ValidationError("genus: must be at least 2");
  Outcome o;
  o.result = io::dimension_to_json(dimension_report(genus, io::algebra_from_json(config.at("algebra"), "algebra")));
  return o;
}

void require_monodromy_curve(const Curve& curve) {
  if (!curve.is_hyperelliptic() || !curve.hyperelliptic().odd_degree()) {
    throw ValidationError("curve: monodromy needs an odd-degree hyperelliptic curve");
  }
}

LoopSystem config_loops(const NumericCurve& curve, double clearance) {
  try {
    return build_loops(curve, clearance);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("clearance: ") + e.what());
  }
}

Outcome run_monodromy(const Json& config) {
  const Curve curve = config_curve(config);
  require_monodromy_curve(curve);
  const auto system = config_system(config, curve, LieAlgebra::sl2(), false);
  if (system.algebra().name() != "sl2") throw ValidationError("system.algebra: monodromy needs sl2");
  const auto numeric_curve = NumericCurve::from(curve.hyperelliptic());
  const auto loops = config_loops(numeric_curve, config.at("clearance").get<double>());
  MonodromyOptions opts;
  opts.ode.tol = config.at("ode_tol").get<double>();
  opts.relation_tolerance = config.at("relation_tol").get<double>();
  opts.det_tolerance = config.at("det_tol").get<double>();
  const auto rep = monodromy(numeric_curve, NumericSystem::from(system), loops, opts);

  Outcome o;
  o.result["system"] = io::system_to_json(system);
  o.result["loops"] = io::loops_to_json(loops);
  o.result["representation"] = io::monodromy_to_json(rep);
  if (rep.valid) {
    o.result["traces"] = io::traces_to_json(trace_vector(rep));
    o.result["irreducibility"] =
        io::irreducibility_to_json(irreducibility_probe(rep, config.at("irreducibility_tol").get<double>()));
  } else {
    o.status = kExitNumerical;
    std::ostringstream msg;
    msg << "monodromy: representation invalid (relation residual " << rep.relation_residual << ")";
    o.message = msg.str();
  }
  return o;
}

Outcome run_immersion(const Json& config) {
  const Curve curve = config_curve(config);
  require_monodromy_curve(curve);
  const auto system = config_system(config, curve, LieAlgebra::sl2(), true);
  ImmersionOptions opts;
  opts.ode.tol = config.at("ode_tol").get<double>();
  opts.clearance = config.at("clearance").get<double>();
  opts.relation_tolerance = config.at("relation_tol").get<double>();
  opts.det_tolerance = config.at("det_tol").get<double>();
  opts.rank_floor = config.at("rank_rel_tol").get<double>();
  if (!(opts.rank_floor < 1.0)) throw ValidationError("rank_rel_tol: must be below 1");
  opts.free_gauge = config.at("free_gauge").get<bool>();
  const auto steps = config.at("fd_steps").get<std::vector<double>>();
  for (double s : steps)
    if (!(s < opts.clearance / 4.0)) throw ValidationError("fd_steps: every step must stay below clearance/4");
  config_loops(NumericCurve::from(curve.hyperelliptic()), opts.clearance);

  Outcome o;
  o.result["system"] = io::system_to_json(system);
  std::ostringstream csv;
  csv << "fd_step,index,singular_value,estimated_rank,gap_ratio\n";
  auto table = [&](const ImmersionReport& r) {
    for (std::size_t k = 0; k < r.singular_values.size(); ++k) {
      csv << shortest(r.fd_steps_used.front()) << ',' << k + 1 << ',' << shortest(r.singular_values[k]) << ','
          << r.estimated_rank << ',' << shortest(r.gap_ratio) << '\n';
    }
  };
  if (steps.size() == 1) {
    opts.fd_step = steps.front();
    const auto report = immersion_experiment(system, opts);
    o.result["experiment"] = io::immersion_to_json(report);
    table(report);
  } else {
    const auto ladder = fd_step_ladder(system, steps, opts);
    o.result["ladder"] = io::ladder_to_json(ladder);
    for (const auto& r : ladder.reports) table(r);
  }
  o.csv = csv.str();
  return o;
}

Outcome dispatch(const std::string& sub, const Json& config) {
  if (sub == "noether") return run_noether(config);
  if (sub == "lazarsfeld") return run_lazarsfeld(config);
  if (sub == "criterion") return run_criterion(config);
  if (sub == "dims") return run_dims(config);
  if (sub == "monodromy") return run_monodromy(config);
  return run_immersion(config);
}

// Defaults, then the config file, then inline flags.
Json resolve(const std::string& sub, const std::string& config_path, const Json& inline_values) {
  Json config = defaults(sub);
  const auto& allowed = subcommand_keys().at(sub);
  std::set<std::string> permitted(allowed.begin(), allowed.end());
  for (const char* common : {"seed", "format", "threads", "out", "subcommand"}) permitted.insert(common);

  auto overlay = [&](const Json& source, const std::string& origin) {
    for (const auto& [name, value] : source.items()) {
      if (!permitted.count(name)) {
        throw ValidationError(origin + name + ": not a field of the " + sub + " subcommand");
      }
      if (name == "subcommand") {
        if (value != sub) throw ValidationError(origin + "subcommand: config is for '" + value.dump() + "'");
        continue;
      }
      config[name] = checked(name, value);
    }
  };
  if (!config_path.empty()) overlay(read_config(config_path), "config.");
  overlay(inline_values, "");

  if (permitted.count("curve")) {
    if (!config.contains("curve")) {
      if (config.contains("genus")) {
        const int g = config["genus"].get<int>();
        if (g < 2) throw ValidationError("genus: must be at least 2");
        config["curve"] = io::curve_to_json(HyperellipticCurve::consecutive(g));
      } else {
        config["curve"] = default_curve(sub);
      }
    }
    config["curve"] = io::curve_to_json(io::curve_from_json(config["curve"], "curve"));
    config.erase("genus");
  }
  const std::string format = config["format"].get<std::string>();
  if (format != "json" && format != "csv") throw ValidationError("format: must be json or csv");
  if (format == "csv" && sub != "lazarsfeld" && sub != "immersion") {
    throw ValidationError("format: csv is only available for lazarsfeld and immersion");
  }
  if (config["threads"].get<long long>() < 0) throw ValidationError("threads: must be non-negative");
  return config;
}

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("out: cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw ValidationError("out: write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("out: cannot move report into '" + path.string() + "' (" + ec.message() + ")");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank experiments on holomorphic differential systems over explicit curves", "rhwb"};
  app.require_subcommand(1);
  std::string config_path;
  std::string system_path;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> given;

  const std::map<std::string, std::string> descriptions = {
      {"noether", "Rank of the full multiplication map on H0(K) (x) H0(K)"},
      {"lazarsfeld", "Random subspace scan of the restricted multiplication map"},
      {"criterion", "Exact transversality criterion for a given or sampled system"},
      {"dims", "Dimension formulas for the character variety and the system space"},
      {"monodromy", "Numerical monodromy, traces and irreducibility probe"},
      {"immersion", "Finite-difference rank of the monodromy map"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, allowed] : subcommand_keys()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    subs[name] = sub;
    sub->add_option("--config", config_path, "JSON config file");
    std::vector<std::string> flags{"seed", "out", "format", "threads"};
    if (name != "noether" && name != "dims" && name != "lazarsfeld") flags.push_back("coefficient_bound");
    for (const auto& k : allowed)
      if (k != "curve" && k != "system" && k != "coefficient_bound") flags.push_back(k);
    if (name == "lazarsfeld") flags.push_back("trials");
    for (const auto& f : flags) {
      if (sub->get_option_no_throw(key(f).flag) != nullptr) continue;
      const Key& k = key(f);
      const std::string slot = name + "/" + f;
      if (k.kind == Kind::boolean) {
        given[slot] = sub->add_flag(k.flag, k.help);
      } else {
        given[slot] = sub->add_option(k.flag, raw[slot], k.help);
      }
    }
    if (name != "dims") {
      sub->add_option("--branch-points", raw[name + "/branch_points"],
                      "Hyperelliptic branch points, comma separated rationals");
      sub->add_option("--quartic", raw[name + "/quartic"], "Built-in plane quartic: fermat or klein");
    }
    if (name == "criterion" || name == "monodromy" || name == "immersion") {
      sub->add_option("--system", system_path, "JSON file with a differential system");
    }
  }

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' && subs.count(args.front()) == 0) {
    err << "error: subcommand: unknown subcommand '" << args.front()
        << "' (expected noether, lazarsfeld, criterion, dims, monodromy or immersion)\n";
    return kExitValidation;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  std::string sub;
  for (const auto& [name, ptr] : subs)
    if (ptr->parsed()) sub = name;

  Json resolved;
  try {
    Json inline_values = Json::object();
    for (const auto& [slot, opt] : given) {
      if (opt->count() == 0 || slot.rfind(sub + "/", 0) != 0) continue;
      const Key& k = key(slot.substr(sub.size() + 1));
      inline_values[k.name] = parse_inline(k, raw[slot]);
    }
    const std::string bp = raw[sub + "/branch_points"];
    const std::string quartic = raw[sub + "/quartic"];
    if (!bp.empty() && !quartic.empty()) throw ValidationError("branch_points: conflicts with --quartic");
    if (!bp.empty()) {
      Json pts = Json::array();
      std::stringstream ss(bp);
      std::string item;
      while (std::getline(ss, item, ',')) pts.push_back(io::exact_to_json(parse_rational(item, "branch_points")));
      inline_values["curve"] = {{"model", "hyperelliptic"}, {"branch_points", pts}};
    }
    if (!quartic.empty()) {
      if (quartic != "fermat" && quartic != "klein") throw ValidationError("quartic: expected fermat or klein");
      inline_values["curve"] = {{"model", "quartic"}, {"family", quartic}};
    }
    if (!system_path.empty()) inline_values["system"] = read_json_file(system_path, "system");
    resolved = resolve(sub, config_path, inline_values);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  set_thread_limit(resolved["threads"].get<int>());
  Outcome outcome;
  try {
    outcome = dispatch(sub, resolved);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  std::string text;
  if (resolved["format"] == "csv") {
    text = outcome.csv;
  } else {
    Json report;
    report["tool"] = "rhwb";
    report["subcommand"] = sub;
    report["config"] = resolved;
    report["result"] = outcome.result;
    report["status"] = outcome.status;
    report["generated_at"] = timestamp();
    text = report.dump(2) + "\n";
  }
  try {
    const std::string path = resolved["out"].is_string() ? resolved["out"].get<std::string>() : "";
    if (path.empty()) {
      out << text;
    } else {
      write_atomically(path, text);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (!outcome.message.empty()) err << "numerical failure: " << outcome.message << '\n';
  return outcome.status;
}

}  // namespace rhwb::cli
