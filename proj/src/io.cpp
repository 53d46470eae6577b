#include "odo/io.hpp"

#include <fstream>
#include <sstream>

namespace odo {

JsonSyntaxError::JsonSyntaxError(const std::string& message, std::size_t line_, std::size_t column_)
    : ValidationError("malformed JSON at line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                      ": " + message),
      line(line_),
      column(column_) {}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw JsonSyntaxError(what, line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

Json load_json_argument(const std::string& argument) {
  const auto first = argument.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (argument[first] == '{' || argument[first] == '['))
    return parse_json(argument);
  return parse_json(read_file(argument));
}

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const AdicRational& r) { return r.str(); }
Json to_json(const Integer& z) { return z.get_str(); }

Json to_json(const Element& u) {
  Json j;
  j["base"] = u.base();
  j["level"] = u.level();
  j["cocycle"] = std::vector<std::int64_t>(u.cocycle().begin(), u.cocycle().end());
  return j;
}

Json to_json(const ClopenSet& s) {
  Json j;
  j["base"] = s.base();
  j["level"] = s.level();
  j["classes"] = std::vector<Residue>(s.classes().begin(), s.classes().end());
  return j;
}

Json to_json(const Permutation& s) { return std::vector<std::uint32_t>(s.images().begin(), s.images().end()); }

Json to_json(const BelinskayaSplit& b) {
  Json j;
  j["negative"] = to_json(b.negative);
  j["periodic"] = to_json(b.periodic);
  j["positive"] = to_json(b.positive);
  j["negative_support"] = to_json(b.negative_support);
  j["periodic_support"] = to_json(b.periodic_support);
  j["positive_support"] = to_json(b.positive_support);
  return j;
}

Json to_json(const Periodicity& p) {
  Json j;
  j["periodic"] = p.periodic();
  j["level"] = p.level;
  if (p.order) {
    j["order"] = to_json(*p.order);
  } else {
    j["witness"] = p.witness;
    j["witness_sum"] = p.witness_sum;
  }
  return j;
}

Json to_json(const ThreeColoring& c) {
  Json j;
  j["level"] = c.level;
  j["parts"] = Json::array({to_json(c.parts[0]), to_json(c.parts[1]), to_json(c.parts[2])});
  return j;
}

Json to_json(const InvolutionTriple& t) {
  Json j;
  j["u1"] = to_json(t.u1);
  j["u2"] = to_json(t.u2);
  j["u3"] = to_json(t.u3);
  j["a1"] = to_json(t.a1);
  j["a2"] = to_json(t.a2);
  j["b1"] = to_json(t.b1);
  j["b2"] = to_json(t.b2);
  j["b3"] = to_json(t.b3);
  return j;
}

Json to_json(const EqualNormSplit& s) {
  Json j;
  j["depth"] = s.depth;
  j["blocks"] = s.blocks;
  j["max_block_weight"] = to_json(s.max_block_weight);
  j["tolerance"] = to_json(s.tolerance);
  j["exact"] = s.exact;
  Json parts = Json::array();
  for (const auto& p : s.parts) parts.push_back({{"element", to_json(p)}, {"norm", to_json(norm1(p))}});
  j["parts"] = parts;
  return j;
}

Json to_json(const TowerSpec& t) {
  Json j;
  j["base_set"] = to_json(t.base_set);
  j["height"] = t.height;
  Json levels = Json::array();
  for (const auto& l : t.levels) levels.push_back(to_json(l));
  j["levels"] = levels;
  j["covered"] = to_json(t.covered);
  return j;
}

Json to_json(const KacReport& k) {
  Json j;
  j["integral"] = to_json(k.integral);
  j["distance"] = to_json(k.distance);
  j["induced_map"] = to_json(k.induced_map);
  return j;
}

Json to_json(const DistortionReport& d) {
  Json j;
  j["base"] = d.base;
  j["m"] = d.m;
  j["width"] = d.width;
  j["a"] = to_json(d.a);
  j["conjugator"] = to_json(d.conjugator);
  j["u"] = to_json(d.u);
  j["v"] = to_json(d.v);
  j["norm_u"] = to_json(d.norm_u);
  j["norm_v"] = to_json(d.norm_v);
  j["ratio"] = to_json(d.ratio);
  j["linf_v"] = to_json(d.linf_v);
  return j;
}

Json to_json(const RecoveryRow& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["exponent"] = to_json(r.exponent);
  j["residual"] = to_json(r.residual);
  return j;
}

Json to_json(const RecoveryReport& r) {
  Json j;
  j["product"] = to_json(r.product);
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  j["rows"] = rows;
  j["crt_exponent"] = to_json(r.crt_exponent);
  j["crt_residual"] = to_json(r.crt_residual);
  return j;
}

Json to_json(const GeneratorReport& g) {
  Json j;
  Json primes = Json::array();
  for (const auto& p : g.primes) primes.push_back(to_json(p));
  j["primes"] = primes;
  j["levels"] = g.levels;
  Json u = Json::array(), v = Json::array(), dist = Json::array();
  for (const auto& e : g.u) u.push_back(to_json(e));
  for (const auto& e : g.v) v.push_back(to_json(e));
  for (const auto& d : g.disjointify_distances) dist.push_back(to_json(d));
  j["u"] = u;
  j["v"] = v;
  j["disjointify_distances"] = dist;
  j["product"] = to_json(g.product);
  Json rows = Json::array();
  for (const auto& r : g.recovery) rows.push_back(to_json(r));
  j["recovery"] = rows;
  return j;
}

Json to_json(const ScheduleReport& s) {
  Json j;
  j["all_passed"] = s.all_passed();
  Json checks = Json::array();
  for (const auto& c : s.checks)
    checks.push_back(
        {{"index", c.index}, {"condition", c.condition}, {"passed", c.passed}, {"exact", c.exact}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

Json to_json(const Approximation& a) {
  Json j;
  j["word"] = a.word;
  j["achieved"] = to_json(a.achieved);
  j["residual"] = to_json(a.residual);
  Json history = Json::array();
  for (const auto& h : a.history) history.push_back(to_json(h));
  j["history"] = history;
  j["index_gap"] = to_json(a.index_gap);
  return j;
}

namespace {

unsigned read_unsigned(const Json& j, const char* key, unsigned fallback, bool required) {
  if (!j.contains(key)) {
    if (required) throw ValidationError(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ValidationError(std::string("field \"") + key + "\" must be a nonnegative integer");
  const auto x = v.get<std::uint64_t>();
  if (x > 1u << 20) throw ValidationError(std::string("field \"") + key + "\" is out of range");
  return static_cast<unsigned>(x);
}

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
}

}  // namespace

Element element_from_json(const Json& j, unsigned default_base) {
  require_object(j, "element");
  const unsigned base = read_unsigned(j, "base", default_base, default_base == 0);
  const unsigned level = read_unsigned(j, "level", 0, true);
  check_base(base);
  if (!j.contains("cocycle") || !j.at("cocycle").is_array())
    throw ValidationError("field \"cocycle\" must be an array of integers");
  const Residue n = residue_count(base, level);
  const auto& arr = j.at("cocycle");
  if (arr.size() != n)
    throw ValidationError("cocycle has " + std::to_string(arr.size()) + " entries; level " + std::to_string(level) +
                          " needs " + std::to_string(n));
  std::vector<std::int64_t> values;
  values.reserve(n);
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw ValidationError("cocycle entries must be integers");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      throw ResourceError("cocycle entry exceeds the 64-bit range");
    values.push_back(v.get<std::int64_t>());
  }
  return Element::from_cocycle(base, level, std::move(values));
}

ClopenSet clopen_from_json(const Json& j, unsigned default_base) {
  require_object(j, "clopen set");
  const unsigned base = read_unsigned(j, "base", default_base, default_base == 0);
  const unsigned level = read_unsigned(j, "level", 0, true);
  check_base(base);
  if (!j.contains("classes") || !j.at("classes").is_array())
    throw ValidationError("field \"classes\" must be an array of residues");
  std::vector<Residue> classes;
  for (const auto& v : j.at("classes")) {
    if (!v.is_number_unsigned()) throw ValidationError("classes must be nonnegative integers");
    classes.push_back(v.get<Residue>());
  }
  return ClopenSet::from_classes(base, level, std::move(classes));
}

Rational rational_from_string(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0 || text.empty()) throw ValidationError("'" + text + "' is not a rational number");
  if (r.get_den() == 0) throw ValidationError("'" + text + "' has a zero denominator");
  r.canonicalize();
  return r;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
    } else {
      out += '"';
      for (char c : f) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    }
  }
  out += '\n';
  return out;
}

}  // namespace odo
