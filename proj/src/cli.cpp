#include "odo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

#include "odo/concentration.hpp"

namespace odo::cli {

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"metric",  "compose",        "decompose",   "kac",
                                              "tower",   "construct",      "recover",     "check-schedule",
                                              "approximate", "distortion", "concentration", "zn-embed"};
  return names;
}

std::string usage() {
  std::string s =
      "usage: odo [--base Q] [--level-cap K] [--seed S] [--samples N] [--budget B]\n"
      "           [--out PATH] [--format json|csv] <subcommand> [args]\n\n"
      "subcommands:\n"
      "  metric U [V] --kind d1|du|linf|dp [--p P]   distance (V defaults to the identity)\n"
      "  compose U V [W ...]                          U o V o W (rightmost applied first)\n"
      "  decompose U [--what ...] [--parts N --depth D]\n"
      "  kac A                                        induced map and return-time integral\n"
      "  tower A [--perm i,j,...]                     Rokhlin tower, optional embedded permutation\n"
      "  construct --primes p,... --levels k,...      generator construction with recovery table\n"
      "  recover V0 V1 ... [--target n] | --primes ... --levels ... [--target n]\n"
      "  check-schedule --paper [--count M] | --primes ... --levels ... [--deltas ...] [--epsilons ...]\n"
      "  approximate TARGET [G1 G2 ...]               greedy word search within --budget steps\n"
      "  distortion [--m m,...] [--width w]           conjugation distortion by induced maps\n"
      "  concentration --n N [--metric l1|hamming] [--functional dist-to-identity|dist-to-fixed]\n"
      "                [--exact] [--epsilons e,...]\n"
      "  zn-embed --n N --exponents m1,... [A]        quasi-isometric copy of Z^n\n\n"
      "Elements and sets are JSON ({\"base\",\"level\",\"cocycle\"} or {\"base\",\"level\",\"classes\"})\n"
      "given inline or as a file path. Exit codes: 0 ok, 1 validation error, 2 I/O error.\n";
  return s;
}

namespace {

Element element_arg(const RunConfig& c, std::size_t i) {
  if (i >= c.inputs.size()) throw ValidationError("missing element argument " + std::to_string(i + 1));
  return element_from_json(load_json_argument(c.inputs[i]), c.base);
}

ClopenSet set_arg(const RunConfig& c, std::size_t i) {
  if (i >= c.inputs.size()) throw ValidationError("missing clopen set argument");
  return clopen_from_json(load_json_argument(c.inputs[i]), c.base);
}

Integer integer_arg(const std::string& text) {
  Integer z;
  if (text.empty() || z.set_str(text, 10) != 0) throw ValidationError("'" + text + "' is not an integer");
  return z;
}

std::uint64_t small_arg(const std::string& text, std::uint64_t max) {
  const Integer z = integer_arg(text);
  if (z < 0 || z > Integer(static_cast<unsigned long>(max)))
    throw ValidationError("'" + text + "' is out of range");
  return z.get_ui();
}

Json metric_results(const RunConfig& c) {
  const Element u = element_arg(c, 0);
  const Element v = c.inputs.size() > 1 ? element_arg(c, 1) : Element(u.base());
  Json r;
  r["kind"] = c.kind;
  if (c.kind == "d1") {
    r["value"] = to_json(d1(u, v));
  } else if (c.kind == "du") {
    r["value"] = to_json(du(u, v));
  } else if (c.kind == "linf") {
    r["value"] = to_json(Rational(linf(u, v)));
  } else if (c.kind == "dp") {
    if (!(c.p >= 1.0)) throw ValidationError("p must be at least 1");
    r["p"] = c.p;
    if (c.p == 1.0) {
      r["value"] = to_json(d1(u, v));
    } else {
      r["value"] = dp(u, v, c.p);
      r["floating"] = true;
    }
  } else {
    throw ValidationError("unknown metric kind '" + c.kind + "' (expected d1, du, linf or dp)");
  }
  return r;
}

Json compose_results(const RunConfig& c) {
  if (c.inputs.size() < 2) throw ValidationError("compose needs at least two elements");
  Element acc = element_arg(c, 0);
  for (std::size_t i = 1; i < c.inputs.size(); ++i) acc = compose(acc, element_arg(c, i));
  Json r;
  r["element"] = to_json(acc);
  r["index"] = to_json(index(acc));
  return r;
}

Json decompose_results(const RunConfig& c) {
  const Element u = element_arg(c, 0);
  const auto want = [&](const char* name) { return c.what == "all" || c.what == name; };
  static const std::vector<std::string> known{"all", "belinskaya", "periodicity", "entropy",
                                              "coloring", "involutions", "split"};
  if (std::find(known.begin(), known.end(), c.what) == known.end())
    throw ValidationError("unknown decomposition '" + c.what + "'");
  Json r;
  r["input"] = to_json(u);
  r["index"] = to_json(index(u));
  const Periodicity per = periodicity(u);
  if (want("belinskaya")) r["belinskaya"] = to_json(belinskaya_decompose(u));
  if (want("periodicity")) r["periodicity"] = to_json(per);
  if (want("entropy")) {
    r["entropy"] = cocycle_entropy(u);
    r["separating_level"] = separating_level(u);
  }
  if (want("coloring")) r["coloring"] = to_json(disjoint_support_3coloring(u));
  if (want("involutions")) {
    if (per.periodic())
      r["involutions"] = to_json(involution_triple_decompose(u));
    else if (c.what == "involutions")
      throw NotPeriodic(per.witness, per.witness_sum, per.level);
  }
  if (c.parts > 0 && (want("split"))) {
    const unsigned depth = c.depth.value_or(u.level() + 4);
    r["split"] = to_json(split_equal_norm(u, c.parts, depth));
  } else if (c.what == "split") {
    throw ValidationError("split needs --parts N");
  }
  return r;
}

Json kac_results(const RunConfig& c) {
  const ClopenSet a = set_arg(c, 0);
  const KacReport k = kac_check(a);
  Json r;
  r["set"] = to_json(a);
  r["integral"] = to_json(k.integral);
  r["distance"] = to_json(k.distance);
  r["induced_map"] = to_json(k.induced_map);
  Json times = Json::array();
  for (const auto& [w, t] : induced(a).return_times) times.push_back({{"class", w}, {"return_time", t}});
  r["return_times"] = times;
  return r;
}

Json tower_results(const RunConfig& c) {
  const ClopenSet a = set_arg(c, 0);
  const TowerSpec t = rokhlin_tower(a);
  Json r;
  r["tower"] = to_json(t);
  if (!c.perm.empty()) {
    const Permutation s = Permutation::from_images(c.perm);
    r["permutation"] = to_json(s);
    r["embedded"] = to_json(rho_embed(t, s));
  }
  return r;
}

std::pair<std::vector<std::uint64_t>, std::vector<unsigned>> primes_and_levels(const RunConfig& c) {
  if (c.primes.empty() || c.primes.size() != c.levels.size())
    throw ValidationError("--primes and --levels must be given with equal lengths");
  std::vector<std::uint64_t> primes;
  std::vector<unsigned> levels;
  for (const auto& p : c.primes) primes.push_back(small_arg(p, kMaxResidues));
  for (const auto& k : c.levels) levels.push_back(static_cast<unsigned>(small_arg(k, 64)));
  return {primes, levels};
}

Json construct_results(const RunConfig& c) {
  const auto [primes, levels] = primes_and_levels(c);
  return to_json(build_generators(c.base, primes, levels));
}

Json recover_results(const RunConfig& c) {
  std::vector<Element> vs;
  if (!c.primes.empty()) {
    const auto [primes, levels] = primes_and_levels(c);
    std::vector<Element> us;
    for (std::size_t i = 0; i < primes.size(); ++i) us.push_back(prime_cycle(c.base, primes[i], levels[i]));
    vs = disjointify(us).elements;
  } else {
    for (std::size_t i = 0; i < c.inputs.size(); ++i) vs.push_back(element_arg(c, i));
  }
  Json r = to_json(assemble_and_recover(vs, c.target));
  r["target"] = c.target;
  Json inputs = Json::array();
  for (const auto& v : vs) inputs.push_back(to_json(v));
  r["elements"] = inputs;
  return r;
}

Json check_schedule_results(const RunConfig& c) {
  ConstructionSchedule s;
  if (c.paper) {
    s = paper_schedule(c.count, c.base);
  } else {
    if (c.primes.empty() || c.primes.size() != c.levels.size())
      throw ValidationError("give --paper or --primes and --levels of equal length");
    s.base = c.base;
    for (const auto& p : c.primes) s.primes.push_back(integer_arg(p));
    for (const auto& k : c.levels) s.levels.push_back(integer_arg(k));
  }
  auto optional_rationals = [&](const std::vector<std::string>& texts) {
    std::vector<std::optional<Rational>> out(s.primes.size());
    for (std::size_t i = 0; i < texts.size() && i < out.size(); ++i)
      if (texts[i] != "-") out[i] = rational_from_string(texts[i]);
    return out;
  };
  s.deltas = optional_rationals(c.deltas);
  s.epsilons = optional_rationals(c.epsilons);
  const std::size_t count = c.paper ? c.count : std::min(c.count, s.primes.size());
  const ScheduleReport report = check_schedule(s, c.paper ? count : s.primes.size());

  Json r;
  Json sched;
  sched["base"] = s.base;
  Json primes = Json::array(), levels = Json::array();
  for (const auto& p : s.primes) primes.push_back(to_json(p));
  for (const auto& k : s.levels) {
    // Levels beyond a few hundred digits are reported by size only.
    if (mpz_sizeinbase(k.get_mpz_t(), 2) <= 1024)
      levels.push_back(to_json(k));
    else
      levels.push_back("2^" + std::to_string(mpz_sizeinbase(k.get_mpz_t(), 2) - 1) +
                       (mpz_popcount(k.get_mpz_t()) == 1 ? "" : " (approx.)"));
  }
  sched["primes"] = primes;
  sched["levels"] = levels;
  r["schedule"] = sched;
  const Json rep = to_json(report);
  r["all_passed"] = rep["all_passed"];
  r["checks"] = rep["checks"];
  return r;
}

std::vector<Element> default_generators(unsigned base) {
  std::vector<Element> gens{Element::odometer(base, 1), Element::odometer(base, -1)};
  unsigned level = 0;
  while (level < 2 && power_of(base, level + 1) <= 16) ++level;
  for (auto& e : all_generating_involutions(base, level)) gens.push_back(std::move(e));
  return gens;
}

Json approximate_results(const RunConfig& c) {
  const Element target = element_arg(c, 0);
  std::vector<Element> gens;
  for (std::size_t i = 1; i < c.inputs.size(); ++i) gens.push_back(element_arg(c, i));
  if (gens.empty()) gens = default_generators(target.base());
  Json r = to_json(greedy_approximate(target, gens, c.budget));
  r["target"] = to_json(target);
  Json g = Json::array();
  for (const auto& e : gens) g.push_back(to_json(e));
  r["generators"] = g;
  return r;
}

Json distortion_results(const RunConfig& c) {
  std::vector<unsigned> ms = c.m_values;
  if (ms.empty())
    for (unsigned m = 2; m <= 10; ++m) ms.push_back(m);
  Json cases = Json::array();
  for (unsigned m : ms) {
    const std::uint64_t width = c.width.value_or(residue_count(c.base, m) - 1);
    cases.push_back(to_json(conj_distortion(c.base, m, width)));
  }
  Json r;
  r["cases"] = cases;
  return r;
}

Json concentration_results(const RunConfig& c) {
  if (c.n == 0) throw ValidationError("concentration needs --n >= 1");
  const PermMetric metric = parse_perm_metric(c.metric);
  const Functional functional = parse_functional(c.functional);
  std::vector<Rational> eps;
  for (const auto& e : c.epsilons) eps.push_back(rational_from_string(e));
  std::optional<Permutation> reference;
  if (functional == Functional::DistToFixed) reference = reference_point(c.n, c.seed);
  const ConcentrationProfile p = c.exact ? exact_profile(c.n, metric, functional, eps, reference)
                                         : mc_profile(c.n, metric, functional, c.samples, c.seed, eps, reference);
  Json r;
  r["n"] = p.n;
  r["metric"] = to_string(p.metric);
  r["functional"] = to_string(p.functional);
  r["reference"] = to_json(p.reference);
  r["median"] = to_json(p.median);
  r["samples"] = p.samples ? Json(*p.samples) : Json("exact");
  Json dist = Json::array();
  for (const auto& [value, mass] : p.distribution()) {
    if (p.exact())
      dist.push_back({{"value", to_json(value)}, {"probability", to_json(mass)}});
    else
      dist.push_back({{"value", to_json(value)}, {"frequency", mpq_get_d(mass.get_mpq_t())}});
  }
  r["distribution"] = dist;
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.epsilons.size(); ++i) {
    Json row;
    row["epsilon"] = to_json(p.epsilons[i]);
    if (p.exact())
      row["alpha"] = to_json(p.alpha_exact[i]);
    else
      row["alpha"] = p.alpha[i];
    row["ci_halfwidth"] = p.ci_halfwidth[i];
    rows.push_back(row);
  }
  r["profile"] = rows;
  return r;
}

Json zn_results(const RunConfig& c) {
  if (c.n == 0) throw ValidationError("zn-embed needs --n >= 1");
  if (c.exponents.size() != c.n) throw ValidationError("--exponents needs exactly n entries");
  ClopenSet a(c.base);
  if (!c.inputs.empty()) {
    a = set_arg(c, 0);
  } else {
    unsigned level = 0;
    while (power_of(c.base, level) < Integer(static_cast<unsigned long>(2 * c.n))) ++level;
    a = ClopenSet::cylinder(c.base, level, 0);
  }
  const auto gens = zn_embedding(static_cast<unsigned>(c.n), a);
  const Element word = zn_word(gens, c.exponents);
  Integer l1 = 0;
  for (auto m : c.exponents) l1 += Integer(static_cast<long>(m < 0 ? -m : m));
  Json r;
  r["set"] = to_json(a);
  Json g = Json::array();
  for (const auto& e : gens) g.push_back(to_json(e));
  r["generators"] = g;
  r["exponents"] = c.exponents;
  r["word"] = to_json(word);
  r["d1"] = to_json(norm1(word));
  r["exponent_l1"] = to_json(l1);
  return r;
}

// --- CSV -------------------------------------------------------------------

std::string json_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool is_element(const Json& j) { return j.is_object() && j.contains("cocycle") && j.contains("level"); }
bool is_set(const Json& j) { return j.is_object() && j.contains("classes") && j.contains("level"); }

std::string join_numbers(const Json& arr) {
  std::string s;
  for (const auto& v : arr) {
    if (!s.empty()) s += ' ';
    s += v.dump();
  }
  return s;
}

// record,kind,base,level,values
void flatten(const std::string& name, const Json& j, std::string& out) {
  if (is_element(j)) {
    out += csv_row({name, "element", j["base"].dump(), j["level"].dump(), join_numbers(j["cocycle"])});
  } else if (is_set(j)) {
    out += csv_row({name, "set", j["base"].dump(), j["level"].dump(), join_numbers(j["classes"])});
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(name.empty() ? key : name + "." + key, value, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(name + "[" + std::to_string(i) + "]", j[i], out);
  } else if (j.is_array()) {
    out += csv_row({name, "list", "", "", join_numbers(j)});
  } else {
    out += csv_row({name, "scalar", "", "", json_text(j)});
  }
}

std::string csv_for(const std::string& sub, const Json& r) {
  std::string out;
  if (sub == "metric") {
    out += csv_row({"kind", "p", "value"});
    out += csv_row({json_text(r["kind"]), r.contains("p") ? json_text(r["p"]) : "", json_text(r["value"])});
  } else if (sub == "distortion") {
    out += csv_row({"base", "m", "width", "norm_u", "norm_v", "ratio", "linf_v"});
    for (const auto& d : r["cases"])
      out += csv_row({json_text(d["base"]), json_text(d["m"]), json_text(d["width"]), json_text(d["norm_u"]),
                      json_text(d["norm_v"]), json_text(d["ratio"]), json_text(d["linf_v"])});
  } else if (sub == "concentration") {
    out += csv_row({"n", "metric", "functional", "epsilon", "alpha", "ci_halfwidth", "samples"});
    for (const auto& row : r["profile"])
      out += csv_row({json_text(r["n"]), json_text(r["metric"]), json_text(r["functional"]), json_text(row["epsilon"]),
                      json_text(row["alpha"]), json_text(row["ci_halfwidth"]), json_text(r["samples"])});
  } else if (sub == "check-schedule") {
    out += csv_row({"index", "condition", "passed", "exact", "detail"});
    for (const auto& c : r["checks"])
      out += csv_row({json_text(c["index"]), json_text(c["condition"]), json_text(c["passed"]), json_text(c["exact"]),
                      json_text(c["detail"])});
  } else if (sub == "construct" || sub == "recover") {
    out += csv_row({"n", "m", "exponent", "residual"});
    for (const auto& row : r[sub == "construct" ? "recovery" : "rows"])
      out += csv_row({json_text(row["n"]), json_text(row["m"]), json_text(row["exponent"]), json_text(row["residual"])});
  } else if (sub == "approximate") {
    out += csv_row({"step", "residual"});
    for (std::size_t i = 0; i < r["history"].size(); ++i)
      out += csv_row({std::to_string(i), json_text(r["history"][i])});
  } else {
    out += csv_row({"record", "kind", "base", "level", "values"});
    flatten("", r, out);
  }
  return out;
}

}  // namespace

Json config_json(const RunConfig& c) {
  Json j;
  j["base"] = c.base;
  j["level_cap"] = c.level_cap;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["budget"] = c.budget;
  j["format"] = c.format;
  j["inputs"] = c.inputs;
  const auto& s = c.subcommand;
  if (s == "metric") {
    j["kind"] = c.kind;
    if (c.kind == "dp") j["p"] = c.p;
  } else if (s == "decompose") {
    j["what"] = c.what;
    if (c.parts) j["parts"] = c.parts;
    if (c.depth) j["depth"] = *c.depth;
  } else if (s == "tower") {
    j["perm"] = c.perm;
  } else if (s == "construct" || s == "recover") {
    j["primes"] = c.primes;
    j["levels"] = c.levels;
    if (s == "recover") j["target"] = c.target;
  } else if (s == "check-schedule") {
    j["paper"] = c.paper;
    j["count"] = c.count;
    j["primes"] = c.primes;
    j["levels"] = c.levels;
    j["deltas"] = c.deltas;
    j["epsilons"] = c.epsilons;
  } else if (s == "distortion") {
    j["m"] = c.m_values;
    if (c.width) j["width"] = *c.width;
  } else if (s == "concentration") {
    j["n"] = c.n;
    j["metric"] = c.metric;
    j["functional"] = c.functional;
    j["exact"] = c.exact;
    j["epsilons"] = c.epsilons;
  } else if (s == "zn-embed") {
    j["n"] = c.n;
    j["exponents"] = c.exponents;
  }
  return j;
}

Json results(const RunConfig& c) {
  check_base(c.base);
  const auto& s = c.subcommand;
  if (s == "metric") return metric_results(c);
  if (s == "compose") return compose_results(c);
  if (s == "decompose") return decompose_results(c);
  if (s == "kac") return kac_results(c);
  if (s == "tower") return tower_results(c);
  if (s == "construct") return construct_results(c);
  if (s == "recover") return recover_results(c);
  if (s == "check-schedule") return check_schedule_results(c);
  if (s == "approximate") return approximate_results(c);
  if (s == "distortion") return distortion_results(c);
  if (s == "concentration") return concentration_results(c);
  if (s == "zn-embed") return zn_results(c);
  throw ValidationError("unknown subcommand '" + s + "'");
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), c.subcommand) == names.end()) {
    err << "error: unknown subcommand '" << c.subcommand << "'\n\n" << usage();
    return kExitValidation;
  }
  if (c.format != "json" && c.format != "csv") {
    err << "error: --format must be json or csv\n";
    return kExitValidation;
  }
  const unsigned previous_cap = level_cap();
  try {
    set_level_cap(c.level_cap);
    const Json r = results(c);
    std::string text;
    if (c.format == "json") {
      Json envelope;
      envelope["tool-version"] = kToolVersion;
      envelope["subcommand"] = c.subcommand;
      envelope["config"] = config_json(c);
      envelope["results"] = r;
      text = envelope.dump(2) + "\n";
    } else {
      text = std::string("# tool-version: ") + kToolVersion + "\n# subcommand: " + c.subcommand +
             "\n# config: " + config_json(c).dump() + "\n" + csv_for(c.subcommand, r);
    }
    if (c.out.empty())
      out << text;
    else
      write_file(c.out, text);
    set_level_cap(previous_cap);
    return kExitOk;
  } catch (const IoError& e) {
    set_level_cap(previous_cap);
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    set_level_cap(previous_cap);
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact computation in topological full groups of q-adic odometers", "odo"};
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--base", c.base, "odometer base q (2..65536)")->capture_default_str();
  app.add_option("--level-cap", c.level_cap, "maximum level for sets and elements")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--samples", c.samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--budget", c.budget, "greedy search step budget")->capture_default_str();
  app.add_option("--out", c.out, "write the report to this file");
  app.add_option("--format", c.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.require_subcommand(1);

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&c, name] { c.subcommand = name; });
    return s;
  };
  auto inputs = [&](CLI::App* s, const std::string& help) { s->add_option("inputs", c.inputs, help); };

  auto* metric = sub("metric", "distance between two elements");
  inputs(metric, "U [V]");
  metric->add_option("--kind", c.kind, "d1, du, linf or dp")->capture_default_str();
  metric->add_option("--p", c.p, "exponent for dp")->capture_default_str();

  inputs(sub("compose", "product of elements"), "U V [W ...]");

  auto* decompose = sub("decompose", "structural decompositions");
  inputs(decompose, "U");
  decompose->add_option("--what", c.what,
                        "all, belinskaya, periodicity, entropy, coloring, involutions or split")
      ->capture_default_str();
  decompose->add_option("--parts", c.parts, "equal-norm split into N parts");
  decompose->add_option("--depth", c.depth, "block level for the split (default level + 4)");

  inputs(sub("kac", "induced map of a clopen set"), "A");

  auto* tower = sub("tower", "Rokhlin tower over a clopen set");
  inputs(tower, "A");
  tower->add_option("--perm", c.perm, "permutation images to embed")->delimiter(',');

  auto* construct = sub("construct", "rank-two generator construction");
  construct->add_option("--primes", c.primes, "cycle lengths p_n")->delimiter(',')->required();
  construct->add_option("--levels", c.levels, "tower levels k_n")->delimiter(',')->required();

  auto* recover = sub("recover", "recover factors from powers of a product");
  inputs(recover, "V0 V1 ...");
  recover->add_option("--primes", c.primes, "cycle lengths p_n")->delimiter(',');
  recover->add_option("--levels", c.levels, "tower levels k_n")->delimiter(',');
  recover->add_option("--target", c.target, "index n to recover")->capture_default_str();

  auto* schedule = sub("check-schedule", "verify a construction schedule");
  schedule->add_flag("--paper", c.paper, "use p_n = n-th prime, k_n = 4^(n 2^n + 2^n)");
  schedule->add_option("--count", c.count, "number of indices")->capture_default_str();
  schedule->add_option("--primes", c.primes, "p_n")->delimiter(',');
  schedule->add_option("--levels", c.levels, "k_n")->delimiter(',');
  schedule->add_option("--deltas", c.deltas, "delta_n as a/b, '-' to skip")->delimiter(',');
  schedule->add_option("--epsilons", c.epsilons, "epsilon_n as a/b, '-' to skip")->delimiter(',');

  inputs(sub("approximate", "greedy approximation by generators"), "TARGET [G1 G2 ...]");

  auto* distortion = sub("distortion", "conjugation distortion by induced maps");
  distortion->add_option("--m", c.m_values, "levels m (default 2..10)")->delimiter(',');
  distortion->add_option("--width", c.width, "return time minus one (default q^m - 1)");

  auto* conc = sub("concentration", "concentration profile on S_n");
  conc->add_option("--n", c.n, "permutation size")->required();
  conc->add_option("--metric", c.metric, "l1 or hamming")->capture_default_str();
  conc->add_option("--functional", c.functional, "dist-to-identity or dist-to-fixed")->capture_default_str();
  conc->add_flag("--exact", c.exact, "enumerate S_n (n <= 8)");
  conc->add_option("--epsilons", c.epsilons, "epsilon grid as a/b values")->delimiter(',');

  auto* zn = sub("zn-embed", "embedded copy of Z^n");
  inputs(zn, "[A]");
  zn->add_option("--n", c.n, "rank")->required();
  zn->add_option("--exponents", c.exponents, "m_1,...,m_n")->delimiter(',')->required();

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kExitValidation;
  }
  return dispatch(c, out, err);
}

}  // namespace odo::cli
