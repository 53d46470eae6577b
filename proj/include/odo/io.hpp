// JSON and CSV encoding of elements, sets, decompositions and reports.
//
// Exact values are written as strings: rationals as "a/b" (integers as
// "a/1"), big integers in decimal. Floating fields are plain JSON numbers.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "odo/decompose.hpp"
#include "odo/genlab.hpp"
#include "odo/towers.hpp"

namespace odo {

using Json = nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

class JsonSyntaxError : public ValidationError {
 public:
  JsonSyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

/// Parses JSON text, reporting syntax errors with 1-based line and column.
Json parse_json(const std::string& text);
/// Inline JSON if the text starts with '{' or '[', otherwise a file path.
Json load_json_argument(const std::string& argument);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

Json to_json(const Rational& r);
Json to_json(const AdicRational& r);
Json to_json(const Integer& z);
Json to_json(const Element& u);
Json to_json(const ClopenSet& s);
Json to_json(const Permutation& s);
Json to_json(const BelinskayaSplit& b);
Json to_json(const Periodicity& p);
Json to_json(const ThreeColoring& c);
Json to_json(const InvolutionTriple& t);
Json to_json(const EqualNormSplit& s);
Json to_json(const TowerSpec& t);
Json to_json(const KacReport& k);
Json to_json(const DistortionReport& d);
Json to_json(const RecoveryRow& r);
Json to_json(const RecoveryReport& r);
Json to_json(const GeneratorReport& g);
Json to_json(const ScheduleReport& s);
Json to_json(const Approximation& a);

/// {"base", "level", "cocycle"}; "base" may be omitted when a default is
/// given (default_base > 0). Non-canonical input is canonicalized.
Element element_from_json(const Json& j, unsigned default_base = 0);
/// {"base", "level", "classes"}.
ClopenSet clopen_from_json(const Json& j, unsigned default_base = 0);

/// "a/b", "a" or a JSON integer.
Rational rational_from_string(const std::string& text);

/// One CSV record; fields containing separators or quotes are quoted.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace odo
