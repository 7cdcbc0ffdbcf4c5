#include "ncert/json_io.hpp"

#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "ncert/errors.hpp"

namespace ncert::jsonio {

namespace {

using nlohmann::json;

constexpr const char* kCertificateFormat = "noether-certificate/1";
constexpr const char* kReportFormat = "noether-report/1";

json int_text(const Int& v) { return to_string(v); }

Int parse_int(const json& j, const char* where) {
  if (!j.is_string()) {
    throw ParseError(std::string(where) + ": expected an integer string");
  }
  try {
    return Int(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError(std::string(where) + ": not a decimal integer: '" +
                     j.get<std::string>() + "'");
  }
}

json ints_to_json(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_text(x));
  return out;
}

std::vector<Int> parse_ints(const json& j, const char* where) {
  if (!j.is_array()) {
    throw ParseError(std::string(where) + ": expected an array");
  }
  std::vector<Int> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(parse_int(e, where));
  return out;
}

json matrix_to_json(const IMatrix& m) {
  json rows = json::array();
  for (int i = 1; i <= m.rows(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.cols(); ++j) row.push_back(int_text(m.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IMatrix parse_matrix(const json& j, const char* where) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ParseError(std::string(where) +
                     ": expected a nonempty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  IMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[static_cast<size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<size_t>(i)].size()) != cols) {
      throw ParseError(std::string(where) + ": ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) {
      m.at(i, c) =
          parse_int(j[static_cast<size_t>(i)][static_cast<size_t>(c)], where);
    }
  }
  return m;
}

json matrices_to_json(const std::vector<IMatrix>& ms) {
  json out = json::array();
  for (const IMatrix& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<IMatrix> parse_matrices(const json& j, const char* where) {
  if (!j.is_array()) {
    throw ParseError(std::string(where) + ": expected an array of matrices");
  }
  std::vector<IMatrix> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(parse_matrix(e, where));
  return out;
}

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

json parse_document(const std::string& text, const char* expected_format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top-level value must be an object");
  const json& fmt = field(doc, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != expected_format) {
    throw ParseError(std::string("unsupported format, expected '") +
                     expected_format + "'");
  }
  return doc;
}

json spec_to_json(const reduction::GroupSpec& spec) {
  return json{{"m", int_text(spec.m)},
              {"n", spec.n},
              {"r", int_text(spec.r)},
              {"mprime", int_text(spec.mprime)}};
}

json witness_to_json(const reduction::Witness& w) {
  return json{{"a1", int_text(w.a1)}, {"alphas", ints_to_json(w.alphas)}};
}

}  // namespace

std::string certificate_to_json(const reduction::Certificate& cert) {
  json doc;
  doc["format"] = kCertificateFormat;
  doc["spec"] = spec_to_json(cert.spec);
  doc["witness"] = witness_to_json(cert.witness);
  doc["pivots"] = ints_to_json(cert.trace.pivots);
  doc["final_entry"] = int_text(cert.trace.final_entry);
  doc["conjugators"] = matrices_to_json(cert.trace.conjugators);
  doc["conjugator_invs"] = matrices_to_json(cert.trace.conjugator_invs);
  doc["norm"] = int_text(cert.norm_check.value);
  doc["verdict"] = reduction::verdict_name(cert.verdict);
  return doc.dump(2) + "\n";
}

reduction::Certificate certificate_from_json(const std::string& text) {
  const json doc = parse_document(text, kCertificateFormat);

  const json& jspec = field(doc, "spec");
  const json& jn = field(jspec, "n");
  if (!jn.is_number_integer()) throw ParseError("spec.n: expected an integer");
  const Int m = parse_int(field(jspec, "m"), "spec.m");
  const int n = jn.get<int>();
  const Int r = parse_int(field(jspec, "r"), "spec.r");
  const Int mprime = parse_int(field(jspec, "mprime"), "spec.mprime");

  const json& jwit = field(doc, "witness");
  reduction::Witness witness{parse_int(field(jwit, "a1"), "witness.a1"),
                             parse_ints(field(jwit, "alphas"),
                                        "witness.alphas")};

  const std::vector<Int> pivots = parse_ints(field(doc, "pivots"), "pivots");
  const Int final_entry = parse_int(field(doc, "final_entry"), "final_entry");
  const std::vector<IMatrix> conjugators =
      parse_matrices(field(doc, "conjugators"), "conjugators");
  const std::vector<IMatrix> conjugator_invs =
      parse_matrices(field(doc, "conjugator_invs"), "conjugator_invs");
  const Int norm = parse_int(field(doc, "norm"), "norm");
  const json& jverdict = field(doc, "verdict");
  if (!jverdict.is_string()) throw ParseError("verdict: expected a string");
  const std::string verdict = jverdict.get<std::string>();

  // A spec or witness that cannot even start the reduction is a structural
  // defect of the file, not a refutable claim.
  reduction::Certificate cert;
  try {
    cert.spec = reduction::make_group_spec(m, n, r);
    cert.witness = witness;
    cert.trace = reduction::run_reduction(cert.spec, cert.witness);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("stored spec or witness is unusable: ") +
                     e.what());
  } catch (const ReducibilityError& e) {
    throw ParseError(std::string("stored spec or witness is unusable: ") +
                     e.what());
  }
  cert = reduction::certify(cert.trace, cert.witness, cert.spec);

  const bool consistent =
      mprime == cert.spec.mprime && pivots == cert.trace.pivots &&
      final_entry == cert.trace.final_entry &&
      conjugators == cert.trace.conjugators &&
      conjugator_invs == cert.trace.conjugator_invs &&
      norm == cert.norm_check.value &&
      verdict == reduction::verdict_name(cert.verdict);
  if (!consistent) cert.verdict = reduction::Verdict::Invalid;
  return cert;
}

std::string trace_to_json(const reduction::GroupSpec& spec,
                          const reduction::Witness& witness,
                          const reduction::ReductionTrace& trace) {
  json doc;
  doc["format"] = "noether-trace/1";
  doc["spec"] = spec_to_json(spec);
  doc["witness"] = witness_to_json(witness);
  doc["delta"] = matrix_to_json(trace.delta);
  doc["a_chain"] = ints_to_json(trace.a_chain);
  doc["conjugators"] = matrices_to_json(trace.conjugators);
  doc["conjugator_invs"] = matrices_to_json(trace.conjugator_invs);
  doc["intermediates"] = matrices_to_json(trace.intermediates);
  doc["pivots"] = ints_to_json(trace.pivots);
  doc["final_entry"] = int_text(trace.final_entry);
  return doc.dump(2) + "\n";
}

std::string report_to_json(const RunReport& report) {
  json doc;
  doc["format"] = kReportFormat;
  doc["command"] = report.command;
  doc["inputs"] = report.inputs;
  doc["outcome"] = report.outcome;
  if (report.payload_json.empty()) {
    doc["payload"] = nullptr;
  } else {
    try {
      doc["payload"] = json::parse(report.payload_json);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("report payload is not valid JSON: ") +
                       e.what());
    }
  }
  doc["wall_ms"] = nullptr;  // keeps equal runs byte-identical
  doc["bounds"] = report.bounds;
  return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  const json doc = parse_document(text, kReportFormat);
  RunReport report;
  const json& jcmd = field(doc, "command");
  if (!jcmd.is_string()) throw ParseError("command: expected a string");
  report.command = jcmd.get<std::string>();
  const json& jin = field(doc, "inputs");
  if (!jin.is_object()) throw ParseError("inputs: expected an object");
  for (const auto& [k, v] : jin.items()) {
    if (!v.is_string()) throw ParseError("inputs: expected string values");
    report.inputs[k] = v.get<std::string>();
  }
  const json& jout = field(doc, "outcome");
  if (!jout.is_string()) throw ParseError("outcome: expected a string");
  report.outcome = jout.get<std::string>();
  if (report.outcome != "ok" && report.outcome != "inconclusive" &&
      report.outcome != "error") {
    throw ParseError("outcome must be ok, inconclusive or error, got '" +
                     report.outcome + "'");
  }
  const json& jpayload = field(doc, "payload");
  report.payload_json = jpayload.is_null() ? "" : jpayload.dump(2);
  report.wall_ms = std::nullopt;
  const json& jbounds = field(doc, "bounds");
  if (!jbounds.is_object()) throw ParseError("bounds: expected an object");
  for (const auto& [k, v] : jbounds.items()) {
    if (!v.is_string()) throw ParseError("bounds: expected string values");
    report.bounds[k] = v.get<std::string>();
  }
  return report;
}

}  // namespace ncert::jsonio
