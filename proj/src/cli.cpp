#include "nsforge/cli.hpp"

#include "nsforge/io.hpp"
#include "nsforge/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace nsforge::cli {

namespace {

using io::Json;

struct Options {
  std::string catalog_name;
  long n = 0;
  std::string descriptor;
  std::string component;
  long genus = 2;
  std::string end_ring = "generic";
  std::string format = "text";
  bool verify = false;
  bool all = false;
  std::string out_file;
  // pullback and dynkin
  std::string from, to, map_file, group, weights;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Integer parse_integer(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  Integer v;
  if (s.empty() || v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw InputError("not an integer: '" + raw + "'");
  return v;
}

IntVector parse_vector(const std::string& s) {
  IntVector v;
  if (s.find_first_not_of(" ") == std::string::npos) return v;
  for (const auto& part : split(s, ',')) v.push_back(parse_integer(part));
  return v;
}

/// A group given as a list of factors, each with its own component coordinates.
struct GroupSpec {
  std::vector<Reductive> factors;
  Reductive group;

  /// Concatenated per-factor components -> component of the product.
  IntVector component(const IntVector& given) const {
    if (std::all_of(given.begin(), given.end(), [](const Integer& v) { return v == 0; }))
      return IntVector(group.pi1_group().num_generators());
    if (factors.size() == 1) return group.pi1().normalize(given);
    std::size_t expected = 0;
    for (const auto& f : factors) expected += f.pi1_group().num_generators();
    if (given.size() != expected)
      throw InputError("component of " + group.name() + " needs " + std::to_string(expected) +
                       " coordinates (one block per factor)");
    IntVector lift;
    std::size_t pos = 0;
    for (const auto& f : factors) {
      const std::size_t k = f.pi1_group().num_generators();
      const IntVector part(given.begin() + static_cast<std::ptrdiff_t>(pos),
                           given.begin() + static_cast<std::ptrdiff_t>(pos + k));
      const IntVector l = f.lift_component(part);
      lift.insert(lift.end(), l.begin(), l.end());
      pos += k;
    }
    return group.component_of(lift);
  }
};

GroupSpec spec_from_factors(std::vector<Reductive> factors) {
  GroupSpec s{std::move(factors), {}};
  s.group = product(s.factors);
  return s;
}

GroupSpec spec_from_name(const std::string& name, std::optional<long> n) {
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
    return spec_from_factors(io::groups_from_json(read_json_file(name)));
  std::vector<Reductive> factors;
  for (const auto& part : split(name, 'x')) factors.push_back(catalog(part, n));
  return spec_from_factors(std::move(factors));
}

GroupSpec resolve_group(const Options& o) {
  if (!o.catalog_name.empty() && !o.descriptor.empty()) throw InputError("give either --catalog or --descriptor");
  if (!o.descriptor.empty()) return spec_from_factors(io::groups_from_json(read_json_file(o.descriptor)));
  if (o.catalog_name.empty()) throw InputError("a group is required (--catalog NAME or --descriptor FILE)");
  return spec_from_name(o.catalog_name, o.n > 0 ? std::optional<long>(o.n) : std::nullopt);
}

CurveModel resolve_curve(const Options& o) {
  if (o.genus < 0) throw InputError("genus must be nonnegative");
  const auto g = static_cast<std::size_t>(o.genus);
  if (o.end_ring == "generic") return CurveModel::generic(g);
  if (o.end_ring == "zero") return CurveModel::make(g, EndRing::zero());
  return CurveModel::make(g, io::end_ring_from_json(read_json_file(o.end_ring)));
}

std::vector<IntVector> generator_components(const Reductive& g) {
  std::vector<IntVector> out;
  const std::size_t k = g.pi1_group().num_generators();
  out.emplace_back(k);
  for (std::size_t i = 0; i < k; ++i) {
    IntVector d(k);
    d[i] = 1;
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle cross-checks

struct Check {
  std::string group, name, status; // status: ok, mismatch, skipped
  IntVector component;
  Json expected, actual;
  std::string note;

  Json to_json() const {
    Json j{{"group", group}, {"check", name}, {"status", status}, {"component", io::to_json(component)}};
    if (!expected.is_null()) j["expected"] = expected;
    if (!actual.is_null()) j["actual"] = actual;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

std::vector<Check> verify_group(const Reductive& g, const std::vector<IntVector>& comps, const CurveModel& curve) {
  std::vector<Check> out;
  const auto budget = oracle::EnumerationBudget::from_env();
  {
    const FinAbGroup brute = oracle::pi1_by_minors(g);
    const bool ok = brute == g.pi1_group();
    out.push_back({g.name(), "pi1_minors", ok ? "ok" : "mismatch", {}, io::to_json(brute), io::to_json(g.pi1_group()), ""});
  }
  if (g.l() > 0) {
    for (std::size_t f = 0; f < g.factors().size(); ++f) {
      Check c{g.name(), "weyl_invariance_factor_" + std::to_string(f), "ok", {}, {}, {}, ""};
      try {
        if (!oracle::full_weyl_check(g, g.factor_form(f), budget)) c.status = "mismatch";
      } catch (const oracle::BudgetExceeded& e) {
        c.status = "skipped";
        c.note = e.what();
      }
      out.push_back(c);
    }
  }
  for (const auto& d : comps) {
    const NSLattice ns = ns_reductive(g, d, curve);
    Check c{g.name(), "ns_bruteforce", "ok", d, {}, {}, ""};
    if (ns.ambient() > 6) {
      c.status = "skipped";
      c.note = "ambient rank " + std::to_string(ns.ambient()) + " above 6";
    } else {
      try {
        const IntMatrix brute = oracle::ns_reductive_bruteforce(g, d, curve, budget);
        if (!oracle::same_lattice_by_membership(brute, ns.basis)) {
          c.status = "mismatch";
          c.expected = io::to_json(brute);
          c.actual = io::to_json(ns.basis);
        }
      } catch (const oracle::BudgetExceeded& e) {
        c.status = "skipped";
        c.note = e.what();
      }
    }
    out.push_back(c);
    const auto ext = ns_extension_analysis(g, d, curve);
    out.push_back({g.name(), "extension_exact", ext.exact ? "ok" : "mismatch", d, {}, {}, ""});
    out.push_back({g.name(), "extension_characterization", ext.characterization_match ? "ok" : "mismatch", d,
                   io::to_json(ext.characterized), io::to_json(ext.pr2_image), ""});
  }
  return out;
}

Json checks_json(const std::vector<Check>& checks, std::size_t& mismatches) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    if (c.status == "mismatch") ++mismatches;
    arr.push_back(c.to_json());
  }
  return arr;
}

std::string checks_text(const std::vector<Check>& checks) {
  std::ostringstream s;
  for (const auto& c : checks) {
    s << c.status << "  " << c.group << " " << c.name;
    if (!c.component.empty()) s << " d=" << to_string(c.component);
    if (!c.note.empty()) s << " (" << c.note << ")";
    if (c.status == "mismatch") s << " expected " << c.expected.dump() << " actual " << c.actual.dump();
    s << "\n";
  }
  return s.str();
}

/// Runs jobs concurrently and returns results in input order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F f) {
  std::vector<std::future<T>> futures;
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, f, i));
  std::vector<T> out;
  for (auto& fu : futures) out.push_back(fu.get());
  return out;
}

// ---------------------------------------------------------------------------
// Commands

struct Output {
  std::string text;
  int code = kOk;
};

bool json_format(const Options& o) {
  if (o.format != "text" && o.format != "json") throw InputError("--format must be text or json");
  return o.format == "json";
}

Output cmd_pi1(const Options& o) {
  const auto spec = resolve_group(o);
  const auto& g = spec.group;
  Output out;
  Json j{{"schema", io::kSchema}, {"group", g.name()}, {"pi1", io::to_json(g.pi1_group())}};
  std::string text = g.pi1_group().to_string() + "\n";
  if (o.verify) {
    const FinAbGroup brute = oracle::pi1_by_minors(g);
    const bool ok = brute == g.pi1_group();
    j["verify"] = Json{{"status", ok ? "ok" : "mismatch"}, {"expected", io::to_json(brute)}};
    if (!ok) {
      out.code = kMismatch;
      text += "verify mismatch: minors give " + brute.to_string() + "\n";
    } else {
      text += "verify ok\n";
    }
  }
  out.text = json_format(o) ? io::dump(j) : text;
  return out;
}

Output cmd_ns(const Options& o) {
  const auto spec = resolve_group(o);
  const auto curve = resolve_curve(o);
  const IntVector d = spec.component(parse_vector(o.component));
  const NSLattice ns = ns_reductive(spec.group, d, curve);
  Output out;
  Json j = io::ns_to_json(ns);
  std::string text = io::ns_to_text(ns);
  if (o.verify) {
    std::size_t mismatches = 0;
    const auto checks = verify_group(spec.group, {d}, curve);
    j["verify"] = checks_json(checks, mismatches);
    text += checks_text(checks);
    if (mismatches) out.code = kMismatch;
  }
  out.text = json_format(o) ? io::dump(j) : text;
  return out;
}

Output cmd_rank(const Options& o) {
  const auto spec = resolve_group(o);
  const auto curve = resolve_curve(o);
  const IntVector d = spec.component(parse_vector(o.component));
  const NSLattice ns = ns_reductive(spec.group, d, curve);
  const std::size_t formula = rank_formula(spec.group, curve);
  Json j{{"schema", io::kSchema}, {"group", spec.group.name()}, {"component", io::to_json(d)},
         {"genus", curve.genus},  {"ns_rank", ns.rank()},        {"rank_formula", formula}};
  std::ostringstream text;
  text << "rank " << ns.rank() << " (formula " << formula << ")\n";
  return {json_format(o) ? io::dump(j) : text.str(), kOk};
}

Output cmd_report(const Options& o) {
  const auto curve = resolve_curve(o);
  struct Item {
    GroupSpec spec;
    IntVector d;
  };
  std::vector<Item> items;
  if (o.all) {
    if (!o.catalog_name.empty() || !o.descriptor.empty()) throw InputError("--all replaces --catalog/--descriptor");
    for (const auto& name : standard_catalog()) {
      auto spec = spec_from_name(name, std::nullopt);
      for (const auto& d : generator_components(spec.group)) items.push_back({spec, d});
    }
  } else {
    auto spec = resolve_group(o);
    const IntVector d = spec.component(parse_vector(o.component));
    items.push_back({std::move(spec), d});
  }
  struct Result {
    Json json;
    std::string text;
    std::size_t mismatches = 0;
  };
  const bool verify = o.verify;
  auto results = parallel_map<Result>(items.size(), [&](std::size_t i) {
    const auto& it = items[i];
    const PicardReport r = picard_report(it.spec.group, it.d, curve);
    Result res{io::report_to_json(r), io::report_to_text(r), 0};
    if (verify) {
      const auto checks = verify_group(it.spec.group, {it.d}, curve);
      res.json["verify"] = checks_json(checks, res.mismatches);
      res.text += checks_text(checks);
    }
    return res;
  });
  Output out;
  std::size_t mismatches = 0;
  for (const auto& r : results) mismatches += r.mismatches;
  if (mismatches) out.code = kMismatch;
  if (json_format(o)) {
    if (!o.all) {
      out.text = io::dump(results[0].json);
    } else {
      Json arr = Json::array();
      for (auto& r : results) arr.push_back(std::move(r.json));
      out.text = io::dump(Json{{"schema", io::kSchema}, {"reports", arr}});
    }
  } else {
    for (std::size_t i = 0; i < results.size(); ++i) out.text += (i ? "\n" : "") + results[i].text;
  }
  return out;
}

Output cmd_verify(const Options& o) {
  const auto curve = resolve_curve(o);
  std::vector<GroupSpec> specs;
  if (!o.catalog_name.empty() || !o.descriptor.empty()) {
    specs.push_back(resolve_group(o));
  } else {
    for (const auto& name : standard_catalog()) specs.push_back(spec_from_name(name, std::nullopt));
  }
  const IntVector given = parse_vector(o.component);
  auto results = parallel_map<std::vector<Check>>(specs.size(), [&](std::size_t i) {
    const auto& g = specs[i].group;
    std::vector<IntVector> comps = (specs.size() == 1 && !o.component.empty())
                                       ? std::vector<IntVector>{specs[i].component(given)}
                                       : generator_components(g);
    return verify_group(g, comps, curve);
  });
  std::vector<Check> checks;
  for (auto& r : results) checks.insert(checks.end(), r.begin(), r.end());
  std::size_t mismatches = 0;
  Json arr = checks_json(checks, mismatches);
  std::size_t skipped = 0;
  for (const auto& c : checks) skipped += c.status == "skipped";
  Output out;
  out.code = mismatches ? kMismatch : kOk;
  if (json_format(o)) {
    out.text = io::dump(Json{{"schema", io::kSchema},
                             {"genus", curve.genus},
                             {"checks", arr},
                             {"mismatches", mismatches},
                             {"skipped", skipped}});
  } else {
    std::ostringstream s;
    s << checks_text(checks) << checks.size() << " checks, " << mismatches << " mismatches, " << skipped
      << " skipped\n";
    out.text = s.str();
  }
  return out;
}

GroupHom read_hom(const Options& o) {
  if (o.from.empty() || o.to.empty() || o.map_file.empty())
    throw InputError("a homomorphism needs --from, --to and --map");
  const Json j = read_json_file(o.map_file);
  if (!j.contains("schema") || j.at("schema") != io::kSchema) throw InputError(o.map_file + ": expected \"schema\": 1");
  io::reject_unknown_fields(j, {"schema", "cochar"}, "homomorphism file");
  if (!j.contains("cochar")) throw InputError(o.map_file + " lacks \"cochar\"");
  const auto source = spec_from_name(o.to, std::nullopt).group;
  const auto target = spec_from_name(o.from, std::nullopt).group;
  return GroupHom::make(source, target, io::matrix_from_json(j.at("cochar"), source.n()));
}

Output cmd_pullback(const Options& o) {
  const auto curve = resolve_curve(o);
  const GroupHom phi = read_hom(o);
  const IntVector d = phi.source.pi1().normalize(parse_vector(o.component));
  const NSMap map = phi_ns(phi, d, curve);
  Json j = io::map_to_json(map);
  j["component"] = io::to_json(d);
  j["pushed_component"] = io::to_json(phi.push_component(d));
  std::ostringstream s;
  s << map.label << ", d = " << to_string(d) << "\n";
  const IntMatrix lm = map.lattice_matrix();
  s << "matrix on NS bases (" << lm.rows() << " x " << lm.cols() << ")\n";
  for (std::size_t i = 0; i < lm.rows(); ++i) s << "  " << to_string(lm.row(i)) << "\n";
  return {json_format(o) ? io::dump(j) : s.str(), kOk};
}

IntMatrix parse_weights(const std::string& s, std::size_t n) {
  std::vector<IntVector> rows;
  if (s.find(';') != std::string::npos) {
    for (const auto& part : split(s, ';')) rows.push_back(parse_vector(part));
  } else if (n == 1) {
    for (const auto& v : parse_vector(s)) rows.push_back({v});
  } else {
    throw InputError("weights of a rank " + std::to_string(n) + " group are separated by ';'");
  }
  for (const auto& r : rows)
    if (r.size() != n) throw InputError("each weight needs " + std::to_string(n) + " coordinates");
  return IntMatrix::from_rows(rows, n);
}

Output cmd_dynkin(const Options& o) {
  Json j{{"schema", io::kSchema}};
  std::ostringstream s;
  if (!o.weights.empty()) {
    if (o.group.empty()) throw InputError("--weights needs --group");
    const auto g = spec_from_name(o.group, std::nullopt).group;
    const IntMatrix w = parse_weights(o.weights, g.n());
    const Integer by_weights = dynkin_by_weights(g, w);
    const DynkinIndex by_map = dynkin_index(representation_hom(g, w));
    if (by_map.value != by_weights)
      throw ComputationError("weight sum gives " + by_weights.get_str() + " but the induced map gives " +
                             by_map.value.get_str());
    j["group"] = g.name();
    j["weights"] = io::to_json(w);
    j["dynkin_index"] = io::to_json(by_weights);
    j["trivial"] = by_map.trivial;
    s << by_weights.get_str() << "\n";
  } else {
    const GroupHom phi = read_hom(o);
    const DynkinIndex d = dynkin_index(phi);
    j["source"] = phi.source.name();
    j["target"] = phi.target.name();
    j["dynkin_index"] = io::to_json(d.value);
    j["trivial"] = d.trivial;
    s << d.value.get_str() << (d.trivial ? " (trivial map)" : "") << "\n";
  }
  return {json_format(o) ? io::dump(j) : s.str(), kOk};
}

Output cmd_catalog(const Options& o) {
  Json fams = Json::object();
  std::ostringstream s;
  s << "families\n";
  for (const auto& [name, desc] : catalog_families()) {
    fams[name] = desc;
    s << "  " << name << "  " << desc << "\n";
  }
  Json std_list = Json::array();
  s << "standard catalog\n ";
  for (const auto& name : standard_catalog()) {
    const auto g = catalog(name);
    std_list.push_back(Json{{"name", name}, {"n", g.n()}, {"type", g.datum().type_string()},
                            {"pi1", g.pi1_group().to_string()}});
    s << " " << name;
  }
  s << "\n";
  return {json_format(o) ? io::dump(Json{{"schema", io::kSchema}, {"families", fams}, {"standard", std_list}})
                         : s.str(),
          kOk};
}

void add_group_options(CLI::App* app, Options& o) {
  app->add_option("--catalog", o.catalog_name, "catalog group, e.g. GL2, PGL3, SL2xT1, GLn with --n");
  app->add_option("--n", o.n, "size for catalog names ending in n");
  app->add_option("--descriptor", o.descriptor, "JSON group descriptor");
}

void add_curve_options(CLI::App* app, Options& o) {
  app->add_option("--component", o.component, "component of pi1, comma separated, one block per factor");
  app->add_option("--genus", o.genus, "genus of the curve")->capture_default_str();
  app->add_option("--end-ring", o.end_ring, "generic, zero or a JSON endomorphism ring")->capture_default_str();
}

void add_output_options(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "text or json")->capture_default_str();
  app->add_option("--out", o.out_file, "write the result to a file");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neron-Severi lattices of moduli of G-bundles on curves", "nsforge"};
  app.require_subcommand(1);
  Options o;

  auto* pi1 = app.add_subcommand("pi1", "fundamental group of a reductive group");
  add_group_options(pi1, o);
  add_output_options(pi1, o);
  pi1->add_flag("--verify", o.verify, "cross-check with the minors oracle");

  auto* ns = app.add_subcommand("ns", "Neron-Severi lattice of a component");
  auto* rank = app.add_subcommand("rank", "rank of the Neron-Severi lattice against the rank formula");
  auto* report = app.add_subcommand("report", "full Picard report");
  auto* verify = app.add_subcommand("verify", "run the brute-force oracles (whole catalog by default)");
  for (auto* sub : {ns, rank, report, verify}) {
    add_group_options(sub, o);
    add_curve_options(sub, o);
    add_output_options(sub, o);
  }
  for (auto* sub : {ns, report}) sub->add_flag("--verify", o.verify, "cross-check with the oracles");
  report->add_flag("--all", o.all, "every group of the standard catalog and every generator component");

  auto* pullback = app.add_subcommand("pullback", "matrix of the pull-back along a homomorphism");
  pullback->add_option("--from", o.from, "target group H of the homomorphism G -> H")->required();
  pullback->add_option("--to", o.to, "source group G")->required();
  pullback->add_option("--map", o.map_file, "JSON file {\"schema\":1,\"cochar\":[[...]]}, n_H x n_G")->required();
  add_curve_options(pullback, o);
  add_output_options(pullback, o);

  auto* dynkin = app.add_subcommand("dynkin", "Dynkin index of a representation or homomorphism");
  dynkin->add_option("--group", o.group, "almost simple group for --weights");
  dynkin->add_option("--weights", o.weights, "weights, e.g. \"3,1,-1,-3\" or \"1,0;-1,1;0,-1\"");
  dynkin->add_option("--from", o.from, "target group of a homomorphism");
  dynkin->add_option("--to", o.to, "source group of a homomorphism");
  dynkin->add_option("--map", o.map_file, "cocharacter map file");
  add_output_options(dynkin, o);

  auto* cat = app.add_subcommand("catalog", "list catalog families and the standard catalog");
  add_output_options(cat, o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Output result;
    if (pi1->parsed()) result = cmd_pi1(o);
    else if (ns->parsed()) result = cmd_ns(o);
    else if (rank->parsed()) result = cmd_rank(o);
    else if (report->parsed()) result = cmd_report(o);
    else if (verify->parsed()) result = cmd_verify(o);
    else if (pullback->parsed()) result = cmd_pullback(o);
    else if (dynkin->parsed()) result = cmd_dynkin(o);
    else result = cmd_catalog(o);
    if (!o.out_file.empty()) {
      std::ofstream f(o.out_file);
      if (!f) throw InputError("cannot write " + o.out_file);
      f << result.text;
    } else {
      out << result.text;
    }
    if (result.code == kMismatch) err << "verify: mismatches found\n";
    return result.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return kComputation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kComputation;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  }
}

} // namespace nsforge::cli
