#include "gramq/ensemble_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gramq/error.hpp"

namespace gramq {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_ensemble(const Ensemble& e) {
  std::ostringstream out;
  out << "{\n  \"dim\": " << e.dim() << ",\n  \"label\": " << json(e.label()).dump() << ",\n  \"members\": [\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Member& m = e[i];
    out << "    {\"p\": " << format_double(m.p) << ", \"amplitudes\": [";
    for (Index k = 0; k < m.state.dim(); ++k) {
      const Complex a = m.state.amplitudes()[k];
      out << (k ? ", " : "") << '[' << format_double(a.real()) << ", " << format_double(a.imag()) << ']';
    }
    out << "]}" << (i + 1 < e.size() ? "," : "") << '\n';
  }
  out << "  ]\n}\n";
  return out.str();
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Ensemble parse_ensemble(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& ex) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, ex.byte)) + ": " + ex.what());
  }
  if (!doc.is_object()) field_error("<root>", "expected an object");
  if (!doc.contains("dim")) field_error("dim", "missing");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0) field_error("dim", "expected a positive integer");
  const Index dim = doc["dim"].get<Index>();

  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) field_error("label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("members") || !doc["members"].is_array()) field_error("members", "expected a list");

  std::vector<Member> members;
  const json& list = doc["members"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "members[" + std::to_string(i) + "]";
    const json& m = list[i];
    if (!m.is_object()) field_error(where, "expected an object");
    if (!m.contains("p")) field_error(where + ".p", "missing");
    const double p = number_at(m["p"], where + ".p");
    if (!m.contains("amplitudes") || !m["amplitudes"].is_array())
      field_error(where + ".amplitudes", "expected a list");
    const json& amps = m["amplitudes"];
    if (static_cast<Index>(amps.size()) != dim)
      field_error(where + ".amplitudes",
                  "has " + std::to_string(amps.size()) + " entries, dim is " + std::to_string(dim));
    ComplexVector v(dim);
    for (Index k = 0; k < dim; ++k) {
      const std::string apath = where + ".amplitudes[" + std::to_string(k) + "]";
      const json& pair = amps[static_cast<std::size_t>(k)];
      if (!pair.is_array() || pair.size() != 2) field_error(apath, "expected a [re, im] pair");
      v[k] = Complex(number_at(pair[0], apath + "[0]"), number_at(pair[1], apath + "[1]"));
    }
    try {
      members.push_back({p, PureState(std::move(v))});
    } catch (const Error& ex) {
      throw Error(ErrorKind::InvariantViolation, "member " + std::to_string(i) + ": " + ex.detail());
    }
  }
  return Ensemble(std::move(members), std::move(label));
}

Ensemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_ensemble(buf.str());
  } catch (const Error& ex) {
    throw Error(ex.kind(), path.string() + ": " + ex.detail());
  }
}

Ensemble resolve_ensemble(std::string_view ref, double b92_overlap) {
  if (is_canonical_name(ref)) return canonical(ref, b92_overlap);
  if (std::filesystem::exists(ref)) return load_ensemble(ref);
  throw Error(ErrorKind::UnknownName, "'" + std::string(ref) + "' is neither a canonical ensemble nor a file");
}

}  // namespace gramq
