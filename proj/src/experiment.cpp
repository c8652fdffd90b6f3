#include "frobtest/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "frobtest/error.hpp"
#include "frobtest/frobenius.hpp"
#include "frobtest/local_cohomology.hpp"
#include "frobtest/parse.hpp"
#include "frobtest/ring_analysis.hpp"

namespace frobtest {

// ---------------------------------------------------------------------------
// Ring files

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
  return s;
}

}  // namespace

RingFile RingFile::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "ring file must be a JSON object");
  for (const char* key : {"characteristic", "variables"})
    if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("ring file lacks \"") + key + "\"");
  RingFile r;
  try {
    const auto p = j.at("characteristic").get<std::int64_t>();
    if (p < 2 || p > 65521) throw Error(ErrorCode::InvalidArgument, "characteristic out of range");
    r.characteristic = static_cast<std::uint32_t>(p);
    r.variables = j.at("variables").get<std::vector<std::string>>();
    if (j.contains("relations")) r.relations = j.at("relations").get<std::vector<std::string>>();
    if (j.contains("order")) r.order = j.at("order").get<std::string>();
    if (j.contains("label")) r.label = j.at("label").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("ring file: ") + e.what());
  }
  return r;
}

Json RingFile::to_json() const {
  Json j;
  j["characteristic"] = characteristic;
  j["variables"] = variables;
  j["relations"] = relations;
  j["order"] = order;
  j["label"] = label;
  return j;
}

PresentedRing RingFile::build() const {
  if (!is_prime(characteristic))
    throw Error(ErrorCode::InvalidArgument, std::to_string(characteristic) + " is not prime");
  if (variables.empty() || variables.size() > kMaxUserVars)
    throw Error(ErrorCode::InvalidArgument, "need 1 to " + std::to_string(kMaxUserVars) + " variables");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_identifier(v)) throw Error(ErrorCode::InvalidArgument, "bad variable name \"" + v + "\"");
    if (!seen.insert(v).second) throw Error(ErrorCode::InvalidArgument, "duplicate variable \"" + v + "\"");
  }
  auto ring = make_ring(characteristic, variables, order_kind_from_string(order));
  std::vector<Polynomial> rels;
  for (const auto& s : relations) rels.push_back(parse_polynomial(s, ring));
  return PresentedRing(ring, Ideal(ring, std::move(rels)), label);
}

const std::vector<std::string>& builtin_ring_names() {
  static const std::vector<std::string> names{"poly2", "fermat2", "fermat5", "nonreduced2", "sr2"};
  return names;
}

RingFile builtin_ring(const std::string& name) {
  RingFile r;
  r.label = name;
  if (name == "poly2") {
    r.variables = {"x", "y"};
  } else if (name == "fermat2" || name == "fermat5") {
    r.characteristic = name == "fermat2" ? 2 : 5;
    r.variables = {"x", "y", "z"};
    r.relations = {"x^3+y^3+z^3"};
  } else if (name == "nonreduced2") {
    r.variables = {"x", "y"};
    r.relations = {"x^2", "x*y"};
  } else if (name == "sr2") {
    r.variables = {"a", "b", "c", "d"};
    r.relations = {"a*c", "a*d", "b*c", "b*d"};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown built-in ring \"" + name + "\"");
  }
  return r;
}

RingFile load_ring_file(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_ring(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::Io, "cannot open ring file " + source);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
  auto r = RingFile::from_json(j);
  if (r.label.empty()) r.label = std::filesystem::path(source).stem().string();
  return r;
}

// ---------------------------------------------------------------------------
// Caps

namespace {

struct CapField {
  const char* key;
  std::uint64_t Caps::*u64;
  std::uint32_t Caps::*u32;
  unsigned Caps::*uns;
};

const std::vector<CapField>& cap_fields() {
  static const std::vector<CapField> fields{
      {"gb_steps", &Caps::gb_steps, nullptr, nullptr},   {"gb_degree", nullptr, &Caps::gb_degree, nullptr},
      {"max_e", nullptr, nullptr, &Caps::max_e},         {"window", nullptr, nullptr, &Caps::window},
      {"max_stage", nullptr, nullptr, &Caps::max_stage}, {"max_s", nullptr, nullptr, &Caps::max_s},
      {"degree_cap", nullptr, nullptr, &Caps::degree_cap}, {"max_basis", &Caps::max_basis, nullptr, nullptr},
      {"max_matrix", &Caps::max_matrix, nullptr, nullptr},
  };
  return fields;
}

void set_cap(Caps& caps, const CapField& f, std::uint64_t v) {
  if (f.u64) caps.*f.u64 = v;
  if (f.u32) caps.*f.u32 = static_cast<std::uint32_t>(v);
  if (f.uns) caps.*f.uns = static_cast<unsigned>(v);
}

std::uint64_t get_cap(const Caps& caps, const CapField& f) {
  if (f.u64) return caps.*f.u64;
  if (f.u32) return caps.*f.u32;
  return caps.*f.uns;
}

}  // namespace

Caps caps_from_environment(Caps base, const std::function<const char*(const char*)>& lookup) {
  for (const auto& f : cap_fields()) {
    std::string name = "FROBTEST_";
    for (const char* c = f.key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    const char* v = lookup(name.c_str());
    if (!v || !*v) continue;
    try {
      if (!std::isdigit(static_cast<unsigned char>(v[0]))) throw std::invalid_argument(v);
      std::size_t used = 0;
      auto n = std::stoull(v, &used);
      if (used != std::string(v).size()) throw std::invalid_argument(v);
      set_cap(base, f, n);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, name + " is not a non-negative integer");
    }
  }
  return base;
}

Json caps_to_json(const Caps& caps) {
  Json j = Json::object();
  for (const auto& f : cap_fields()) j[f.key] = get_cap(caps, f);
  return j;
}

Caps caps_from_json(const Json& j, Caps base) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "caps must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto it = std::find_if(cap_fields().begin(), cap_fields().end(), [&](const auto& f) { return key == f.key; });
    if (it == cap_fields().end()) throw Error(ErrorCode::Parse, "unknown cap \"" + key + "\"");
    if (!value.is_number_unsigned()) throw Error(ErrorCode::Parse, "cap \"" + key + "\" must be a non-negative integer");
    set_cap(base, *it, value.get<std::uint64_t>());
  }
  return base;
}

int exit_code(Status s) { return s == Status::Certified || s == Status::CertifiedWindow ? 0 : 2; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

// ---------------------------------------------------------------------------
// Single computations

namespace {

Json value_json(const CertifiedValue& v) {
  Json j;
  j["value"] = v.value;
  j["status"] = to_string(v.status);
  if (!v.cap.empty()) j["cap"] = v.cap;
  j["evidence"] = v.evidence;
  return j;
}

Json hsl_json(const HSLReport& r) {
  Json j;
  j["degree"] = r.degree;
  j["hsl"] = value_json(r.value);
  j["length"] = r.length;
  j["kernel_chain"] = r.kernel_chain;
  j["nilpotent"] = r.nilpotent;
  return j;
}

Ideal parse_ideal(const PresentedRing& R, const std::string& text) {
  return Ideal(R.ambient(), parse_polynomial_list(text, R.ambient()));
}

std::string suffix(const CertifiedValue& v) {
  std::string s = std::string(" [") + to_string(v.status);
  if (!v.cap.empty() && v.status == Status::Truncated) s += ": " + v.cap;
  return s + "]";
}

std::string prime_power(const PresentedRing& R, unsigned e) {
  return std::to_string(checked_prime_power(R.characteristic(), e));
}

// Witnesses re-verified through the public API.
Json witnesses_json(const PresentedRing& R, const Ideal& I, const ClosureResult& res, const Caps& caps,
                    std::string* text) {
  Json out = Json::array();
  const auto base = R.lift(I);
  for (const auto& w : res.witnesses) {
    auto power = w.generator.frobenius_power(w.exponent);
    Json j;
    j["generator"] = w.generator.to_string();
    j["exponent"] = w.exponent;
    j["power"] = power.to_string();
    j["outside_ideal"] = !base.contains(w.generator, caps);
    j["power_in_frobenius_power"] = R.lift(frobenius_power(I, w.exponent)).contains(power, caps);
    if (w.exponent > 1)
      j["earlier_power_outside"] =
          !R.lift(frobenius_power(I, w.exponent - 1)).contains(w.generator.frobenius_power(w.exponent - 1), caps);
    if (text)
      *text += "  witness " + w.generator.to_string() + ": not in I + a, " + power.to_string() + " in I^[" +
               prime_power(R, w.exponent) + "] + a\n";
    out.push_back(std::move(j));
  }
  return out;
}

Json closure_gb_json(const Ideal& closure, const Caps& caps) {
  Json j = Json::array();
  for (const auto& g : closure.groebner(caps).elements()) j.push_back(g.to_string());
  return j;
}

Json header(const char* command, const RingFile& ring) {
  Json j;
  j["command"] = command;
  j["ring"] = ring.to_json();
  return j;
}

}  // namespace

static CommandResult closure_body(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  auto R = ring.build();
  auto I = parse_ideal(R, ideal);
  auto res = frobenius_closure(I, R, opts.caps);
  CommandResult out;
  out.report = header("closure", ring);
  out.report["ideal"] = I.to_string();
  out.report["fte"] = value_json(res.fte);
  if (!res.fte.usable()) {
    out.text = "I^F undetermined, Fte undetermined" + suffix(res.fte) + "\n";
  } else {
    const bool same = res.closure.equals(R.lift(I), opts.caps);
    out.report["closure"] = closure_gb_json(res.closure, opts.caps);
    out.report["closure_equals_ideal"] = same;
    if (same)
      out.text = "I^F = I, Fte = 0" + suffix(res.fte) + "\n";
    else
      out.text = "I^F = " + Ideal(R.ambient(), res.closure.groebner(opts.caps).elements()).to_string() +
                 ", Fte = " + std::to_string(res.fte.value) + suffix(res.fte) + "\n";
  }
  out.report["witnesses"] = witnesses_json(R, I, res, opts.caps, &out.text);
  out.exit_code = exit_code(res.fte.status);
  return out;
}

static CommandResult fte_body(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  auto R = ring.build();
  auto I = parse_ideal(R, ideal);
  auto res = frobenius_closure(I, R, opts.caps);
  CommandResult out;
  out.report = header("fte", ring);
  out.report["ideal"] = I.to_string();
  out.report["fte"] = value_json(res.fte);
  out.text = res.fte.usable() ? "Fte = " + std::to_string(res.fte.value) + suffix(res.fte) + "\n"
                              : "Fte undetermined" + suffix(res.fte) + "\n";
  out.report["witnesses"] = witnesses_json(R, I, res, opts.caps, &out.text);
  out.exit_code = exit_code(res.fte.status);
  return out;
}

static CommandResult h0_body(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  auto R = ring.build();
  auto I = ideal.empty() ? Ideal::zero(R.ambient()) : parse_ideal(R, ideal);
  auto module = h0_module(R, I, opts.caps);
  auto hsl = hsl_relative_h0(R, I, opts.caps);
  CommandResult out;
  out.report = header("h0", ring);
  out.report["ideal"] = I.to_string();
  out.report["length"] = module.length();
  Json basis = Json::array();
  std::vector<std::string> names;
  for (const auto& b : module.basis) {
    basis.push_back(b.parts[0].to_string());
    names.push_back(b.parts[0].to_string());
  }
  out.report["basis"] = basis;
  out.report["hsl"] = hsl_json(hsl);
  out.text = "H^0_m(R/I): length " + std::to_string(module.length()) +
             (names.empty() ? "" : ", basis " + join(names, ", ")) + "\n";
  out.text += hsl.value.usable() ? "HSL_R(H^0_m(R/I)) = " + std::to_string(hsl.value.value) +
                                       ", F-nilpotent: " + (hsl.nilpotent ? "yes" : "no") + suffix(hsl.value) + "\n"
                                 : "HSL_R(H^0_m(R/I)) undetermined" + suffix(hsl.value) + "\n";
  out.exit_code = exit_code(hsl.value.status);
  return out;
}

namespace {

std::vector<Polynomial> parameters_for(const PresentedRing& R, const std::string& sequence, const RunOptions& opts) {
  if (!sequence.empty()) return parse_polynomial_list(sequence, R.ambient());
  return linear_parameters(R, opts.seed, opts.caps).elements;
}

std::string hsl_line(const HSLReport& r) {
  const auto name = "HSL(H^" + std::to_string(r.degree) + ")";
  if (!r.value.usable()) return name + " undetermined" + suffix(r.value);
  return name + " = " + std::to_string(r.value.value) + ", F-nilpotent: " + (r.nilpotent ? "yes" : "no") +
         suffix(r.value);
}

}  // namespace

static CommandResult hsl_body(const RingFile& ring, std::optional<int> degree, const std::string& sequence,
                              const RunOptions& opts) {
  auto R = ring.build();
  auto x = parameters_for(R, sequence, opts);
  CommandResult out;
  out.report = header("hsl", ring);
  out.report["parameters"] = ParameterSequence{x, {}, {}, {}}.to_string();
  const int d = static_cast<int>(x.size());
  if (degree) {
    if (*degree < 0 || *degree > d)
      throw Error(ErrorCode::InvalidArgument, "degree must lie in 0.." + std::to_string(d));
    require_system_of_parameters(R, x, opts.caps);
    auto r = *degree == d ? hsl_top(R, x, opts.caps) : hsl_local_cohomology(R, x, *degree, opts.caps);
    out.report["degrees"] = Json::array({hsl_json(r)});
    out.text = hsl_line(r) + "\n";
    out.exit_code = exit_code(r.value.status);
    return out;
  }
  auto all = hsl_ring(R, x, opts.caps);
  Json degrees = Json::array();
  for (const auto& r : all.degrees) {
    degrees.push_back(hsl_json(r));
    out.text += hsl_line(r) + "\n";
  }
  out.report["degrees"] = degrees;
  out.report["hsl"] = value_json(all.hsl);
  out.report["bound"] = value_json(all.bound);
  out.text += all.hsl.usable() ? "HSL(R) = " + std::to_string(all.hsl.value) +
                                     ", bound = " + std::to_string(all.bound.value) + suffix(all.hsl) + "\n"
                               : "HSL(R) undetermined" + suffix(all.hsl) + "\n";
  out.exit_code = exit_code(all.hsl.status);
  return out;
}

namespace {

// A cap hit before any invariant is known still yields a TRUNCATED report.
template <class Body>
CommandResult guarded(const char* command, const RingFile& ring, Body body) {
  try {
    return body();
  } catch (const Error& err) {
    if (err.code() != ErrorCode::CapExceeded && err.code() != ErrorCode::Overflow &&
        err.code() != ErrorCode::UnboundedSupport)
      throw;
    CommandResult out;
    out.report = header(command, ring);
    out.report["status"] = to_string(Status::Truncated);
    out.report["cap"] = err.what();
    out.text = std::string(command) + " undetermined [TRUNCATED: " + err.what() + "]\n";
    out.exit_code = exit_code(Status::Truncated);
    return out;
  }
}

}  // namespace

CommandResult cmd_closure(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  return guarded("closure", ring, [&] { return closure_body(ring, ideal, opts); });
}

CommandResult cmd_fte(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  return guarded("fte", ring, [&] { return fte_body(ring, ideal, opts); });
}

CommandResult cmd_h0(const RingFile& ring, const std::string& ideal, const RunOptions& opts) {
  return guarded("h0", ring, [&] { return h0_body(ring, ideal, opts); });
}

CommandResult cmd_hsl(const RingFile& ring, std::optional<int> degree, const std::string& sequence,
                      const RunOptions& opts) {
  return guarded("hsl", ring, [&] { return hsl_body(ring, degree, sequence, opts); });
}

// ---------------------------------------------------------------------------
// Verification harness

namespace {

bool decided(Status s) { return s == Status::Certified || s == Status::CertifiedWindow; }

struct Samples {
  std::vector<ParameterSequence> list;
  std::string error;
};

Samples draw_samples(const PresentedRing& R, const RunOptions& opts) {
  Samples s;
  try {
    s.list = sample_parameter_ideals(R, opts.samples, opts.degree, opts.seed, opts.caps);
  } catch (const Error& err) {
    s.error = err.what();
  }
  return s;
}

// Tallies row verdicts into a claim: VIOLATED if any row is, HOLDS if some
// row holds and none is violated, else UNDECIDED.
struct Claim {
  Json rows = Json::array();
  std::size_t holds = 0, violated = 0, undecided = 0;

  void add(Json row, Verdict v, const std::string& reason = {}) {
    row["verdict"] = to_string(v);
    if (v == Verdict::Undecided) row["reason"] = reason;
    (v == Verdict::Holds ? holds : v == Verdict::Violated ? violated : undecided)++;
    rows.push_back(std::move(row));
  }
  Verdict verdict() const {
    if (violated) return Verdict::Violated;
    return holds ? Verdict::Holds : Verdict::Undecided;
  }
  Json to_json() const {
    Json j;
    j["verdict"] = to_string(verdict());
    j["holds"] = holds;
    j["violated"] = violated;
    j["undecided"] = undecided;
    j["rows"] = rows;
    return j;
  }
};

std::string reason_of(const char* what, const CertifiedValue& v) {
  std::string s = std::string(what) + " is " + to_string(v.status);
  if (!v.cap.empty()) s += " (" + v.cap + ")";
  return s;
}

Json sample_header(const ParameterSequence& q, std::size_t index) {
  Json j;
  j["index"] = index;
  j["ideal"] = q.to_string();
  return j;
}

int verification_exit(const std::vector<const Claim*>& claims, bool sampling_failed) {
  for (const auto* c : claims)
    if (c->violated || c->undecided || c->verdict() != Verdict::Holds) return 2;
  return sampling_failed ? 2 : 0;
}

}  // namespace

CommandResult cmd_verify_bound(const RingFile& ring, const RunOptions& opts) {
  auto R = ring.build();
  CommandResult out;
  out.report = header("verify-bound", ring);
  out.report["seed"] = opts.seed;
  out.report["caps"] = caps_to_json(opts.caps);
  const int d = R.dimension(opts.caps);
  out.report["dimension"] = d;

  CertifiedValue bound;
  try {
    auto x = linear_parameters(R, opts.seed, opts.caps);
    out.report["parameters"] = x.to_string();
    auto all = hsl_ring(R, x.elements, opts.caps);
    Json degrees = Json::array();
    for (const auto& r : all.degrees) degrees.push_back(hsl_json(r));
    out.report["hsl"] = degrees;
    bound = all.bound;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::InvariantViolation) throw;
    bound.value = -1;
    bound.status = Status::Truncated;
    bound.cap = err.what();
  }
  out.report["bound"] = value_json(bound);

  auto samples = draw_samples(R, opts);
  if (!samples.error.empty()) out.report["sampling_error"] = samples.error;
  Claim claim;
  std::int64_t max_fte = -1;
  for (std::size_t k = 0; k < samples.list.size(); ++k) {
    const auto& q = samples.list[k];
    auto row = sample_header(q, k);
    auto res = frobenius_closure(q.ideal(), R, opts.caps);
    row["fte"] = value_json(res.fte);
    row["witnesses"] = witnesses_json(R, q.ideal(), res, opts.caps, nullptr);
    if (res.fte.certified()) max_fte = std::max(max_fte, res.fte.value);
    if (!res.fte.certified()) {
      claim.add(std::move(row), Verdict::Undecided, reason_of("Fte", res.fte));
    } else if (!bound.usable()) {
      claim.add(std::move(row), Verdict::Undecided, reason_of("bound", bound));
    } else if (res.fte.value <= bound.value) {
      claim.add(std::move(row), Verdict::Holds);
    } else {
      row["violation"] = {{"ring", ring.to_json()}, {"ideal", q.to_string()}, {"fte", res.fte.value},
                          {"bound", bound.value}};
      claim.add(std::move(row), Verdict::Violated);
    }
  }
  out.report["max_certified_fte"] = max_fte;
  out.report["samples"] = claim.to_json();
  out.report["verdict"] = to_string(claim.verdict());

  out.text = "ring " + ring.label + ": d = " + std::to_string(d) + ", bound = " +
             (bound.usable() ? std::to_string(bound.value) : std::string("?")) + suffix(bound) + "\n";
  for (const auto& row : claim.rows) {
    const bool usable = row["fte"]["status"] != "TRUNCATED";
    out.text += "  " + row["ideal"].get<std::string>() + ": Fte = " +
                (usable ? std::to_string(row["fte"]["value"].get<std::int64_t>()) : std::string("?")) + " [" +
                row["fte"]["status"].get<std::string>() + "] " + row["verdict"].get<std::string>() + "\n";
  }
  if (!samples.error.empty()) out.text += "  sampling failed: " + samples.error + "\n";
  out.text += "verdict: " + std::string(to_string(claim.verdict())) + " (" + std::to_string(claim.holds) +
              " holds, " + std::to_string(claim.violated) + " violated, " + std::to_string(claim.undecided) +
              " undecided)\n";
  out.exit_code = verification_exit({&claim}, !samples.error.empty());
  return out;
}

namespace {

Ideal prefix(const PresentedRing& R, const std::vector<Polynomial>& x, std::size_t i) {
  return Ideal(R.ambient(), std::vector<Polynomial>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i)));
}

HSLReport first_cohomology(const PresentedRing& R, const std::vector<Polynomial>& x, std::size_t i,
                           const Caps& caps) {
  PresentedRing quotient(R.ambient(), R.lift(prefix(R, x, i)), R.label());
  const std::vector<Polynomial> rest(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  return rest.size() == 1 ? hsl_top(quotient, rest, caps) : hsl_local_cohomology(quotient, rest, 1, caps);
}

}  // namespace

CommandResult cmd_verify_properties(const RingFile& ring, const RunOptions& opts) {
  auto R = ring.build();
  CommandResult out;
  out.report = header("verify-properties", ring);
  out.report["seed"] = opts.seed;
  out.report["e_max"] = opts.e_max;
  out.report["caps"] = caps_to_json(opts.caps);
  auto samples = draw_samples(R, opts);
  if (!samples.error.empty()) out.report["sampling_error"] = samples.error;

  Claim identity, subadditivity, ladder;
  for (std::size_t k = 0; k < samples.list.size(); ++k) {
    const auto& q = samples.list[k];
    const auto Q = q.ideal();
    const auto fte = frobenius_test_exponent(Q, R, opts.caps);

    // Fte(q) = HSL_R(H^0(R/q))
    {
      auto row = sample_header(q, k);
      row["fte"] = value_json(fte);
      try {
        auto h = hsl_relative_h0(R, Q, opts.caps);
        row["hsl_relative"] = value_json(h.value);
        if (!fte.certified())
          identity.add(std::move(row), Verdict::Undecided, reason_of("Fte", fte));
        else if (!h.value.certified())
          identity.add(std::move(row), Verdict::Undecided, reason_of("HSL_R", h.value));
        else
          identity.add(std::move(row), h.value.value == fte.value ? Verdict::Holds : Verdict::Violated);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::InvariantViolation) throw;
        row["violation"] = err.what();
        identity.add(std::move(row), Verdict::Violated);
      }
    }

    // Fte(q) <= Fte(q^[p^e]) + e
    for (unsigned e = 1; e <= opts.e_max; ++e) {
      auto row = sample_header(q, k);
      row["e"] = e;
      auto power = frobenius_test_exponent(frobenius_power(Q, e), R, opts.caps);
      row["fte"] = fte.value;
      row["fte_power"] = value_json(power);
      if (!fte.certified())
        subadditivity.add(std::move(row), Verdict::Undecided, reason_of("Fte(q)", fte));
      else if (!power.certified())
        subadditivity.add(std::move(row), Verdict::Undecided, reason_of("Fte(q^[p^e])", power));
      else
        subadditivity.add(std::move(row), fte.value <= power.value + e ? Verdict::Holds : Verdict::Violated);
    }

    // HSL_R(H^0(R/q_i)) <= HSL_R(H^0(R/q_{i-1}^[p^e1])) + e1, e1 = HSL(H^1(R/q_{i-1}))
    const auto& x = q.elements;
    for (std::size_t i = 1; i <= x.size(); ++i) {
      auto row = sample_header(q, k);
      row["i"] = i;
      try {
        // cheapest ingredient first; later ones are skipped once undecided
        auto e1 = first_cohomology(R, x, i - 1, opts.caps);
        row["e1"] = value_json(e1.value);
        if (!decided(e1.value.status)) {
          ladder.add(std::move(row), Verdict::Undecided, reason_of("H^1 snapshot", e1.value));
          continue;
        }
        auto lhs = hsl_relative_h0(R, prefix(R, x, i), opts.caps);
        row["lhs"] = value_json(lhs.value);
        if (!decided(lhs.value.status)) {
          ladder.add(std::move(row), Verdict::Undecided, reason_of("HSL_R(H^0(R/q_i))", lhs.value));
          continue;
        }
        auto rhs = hsl_relative_h0(R, frobenius_power(prefix(R, x, i - 1), static_cast<unsigned>(e1.value.value)),
                                   opts.caps);
        row["rhs_h0"] = value_json(rhs.value);
        if (!decided(rhs.value.status))
          ladder.add(std::move(row), Verdict::Undecided, reason_of("HSL_R(H^0(R/q_{i-1}^[p^e1]))", rhs.value));
        else
          ladder.add(std::move(row),
                     lhs.value.value <= rhs.value.value + e1.value.value ? Verdict::Holds : Verdict::Violated);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::InvariantViolation) throw;
        ladder.add(std::move(row), Verdict::Undecided, err.what());
      }
    }
  }

  out.report["identity"] = identity.to_json();
  out.report["subadditivity"] = subadditivity.to_json();
  out.report["ladder"] = ladder.to_json();

  out.text = "ring " + ring.label + ", " + std::to_string(samples.list.size()) + " samples\n";
  const std::vector<std::pair<const char*, const Claim*>> claims{
      {"identity Fte(q) = HSL_R(H^0(R/q))", &identity},
      {"subadditivity Fte(q) <= Fte(q^[p^e]) + e", &subadditivity},
      {"ladder at j = 0", &ladder}};
  for (const auto& [name, c] : claims)
    out.text += std::string("  ") + name + ": " + to_string(c->verdict()) + " (" + std::to_string(c->holds) +
                " holds, " + std::to_string(c->violated) + " violated, " + std::to_string(c->undecided) +
                " undecided)\n";
  if (!samples.error.empty()) out.text += "  sampling failed: " + samples.error + "\n";
  out.exit_code = verification_exit({&identity, &subadditivity, &ladder}, !samples.error.empty());
  return out;
}

// ---------------------------------------------------------------------------
// Batch

const std::string& summary_header() {
  static const std::string h =
      "label,p,d,hsl,bound,bound_status,max_fte,bound_verdict,identity_verdict,subadditivity_verdict,"
      "ladder_verdict,status,error";
  return h;
}

namespace {

struct Entry {
  std::string source;
  RunOptions opts;
  std::vector<std::string> tasks;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

RunOptions apply_options(const Json& j, RunOptions o) {
  if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) o.samples = j.at("samples").get<unsigned>();
  if (j.contains("degree")) o.degree = j.at("degree").get<unsigned>();
  if (j.contains("e_max")) o.e_max = j.at("e_max").get<unsigned>();
  if (j.contains("caps")) o.caps = caps_from_json(j.at("caps"), o.caps);
  return o;
}

std::vector<std::string> tasks_of(const Json& j, std::vector<std::string> fallback) {
  if (!j.contains("tasks")) return fallback;
  auto t = j.at("tasks").get<std::vector<std::string>>();
  for (const auto& s : t)
    if (s != "verify-bound" && s != "verify-properties")
      throw Error(ErrorCode::Parse, "unknown batch task \"" + s + "\"");
  return t;
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct RowResult {
  Json report;
  std::vector<std::string> csv;
  bool failed = false;
  bool violated = false;
};

RowResult run_entry(const Entry& entry, const std::string& name) {
  RowResult out;
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Json timing;
  timing["started"] = started;
  std::string label = name, p, d, hsl, bound, bound_status, max_fte;
  std::map<std::string, std::string> verdicts;
  try {
    auto ring = load_ring_file(entry.source);
    label = ring.label;
    out.report["source"] = entry.source;
    out.report["ring"] = ring.to_json();
    out.report["seed"] = entry.opts.seed;
    out.report["samples"] = entry.opts.samples;
    out.report["degree"] = entry.opts.degree;
    out.report["caps"] = caps_to_json(entry.opts.caps);
    p = std::to_string(ring.characteristic);
    for (const auto& task : entry.tasks) {
      const auto s0 = std::chrono::steady_clock::now();
      auto res = task == "verify-bound" ? cmd_verify_bound(ring, entry.opts) : cmd_verify_properties(ring, entry.opts);
      timing["seconds"][task] = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
      auto& r = res.report;
      if (task == "verify-bound") {
        d = std::to_string(r["dimension"].get<int>());
        std::vector<std::string> values;
        if (r.contains("hsl"))
          for (const auto& h : r["hsl"]) values.push_back(std::to_string(h["hsl"]["value"].get<std::int64_t>()));
        hsl = join(values, ";");
        bound = std::to_string(r["bound"]["value"].get<std::int64_t>());
        bound_status = r["bound"]["status"].get<std::string>();
        max_fte = std::to_string(r["max_certified_fte"].get<std::int64_t>());
        verdicts["bound"] = r["verdict"].get<std::string>();
      } else {
        for (const char* c : {"identity", "subadditivity", "ladder"}) verdicts[c] = r[c]["verdict"].get<std::string>();
      }
      for (const auto& [k, v] : verdicts) out.violated = out.violated || v == "VIOLATED";
      r.erase("command");
      r.erase("ring");
      out.report[task] = std::move(r);
    }
  } catch (const std::exception& err) {
    out.failed = true;
    out.report["source"] = entry.source;
    out.report["error"] = err.what();
  }
  timing["seconds"]["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.report["timing"] = timing;
  auto verdict = [&](const char* k) { return verdicts.count(k) ? verdicts[k] : std::string(); };
  out.csv = {label,
             p,
             d,
             hsl,
             bound,
             bound_status,
             max_fte,
             verdict("bound"),
             verdict("identity"),
             verdict("subadditivity"),
             verdict("ladder"),
             out.failed ? "FAILED" : "OK",
             out.failed ? out.report["error"].get<std::string>() : std::string()};
  return out;
}

}  // namespace

BatchResult cmd_batch(const std::string& manifest_path, const std::string& out_dir, unsigned parallelism,
                      const RunOptions& defaults) {
  Json manifest;
  {
    std::ifstream in(manifest_path);
    if (!in) throw Error(ErrorCode::Io, "cannot open manifest " + manifest_path);
    try {
      manifest = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, manifest_path + ": " + e.what());
    }
  }
  std::vector<Entry> entries;
  std::vector<std::string> names;
  try {
    if (!manifest.is_object()) throw Error(ErrorCode::Parse, "manifest must be a JSON object");
    const auto base = apply_options(manifest, defaults);
    const auto tasks = tasks_of(manifest, {"verify-bound", "verify-properties"});
    const auto base_dir = std::filesystem::path(manifest_path).parent_path();
    std::map<std::string, int> used;
    for (const auto& item : manifest.value("rings", Json::array())) {
      Entry e;
      const Json spec = item.is_string() ? Json{{"ring", item}} : item;
      if (!spec.is_object() || !spec.contains("ring")) throw Error(ErrorCode::Parse, "manifest entry lacks \"ring\"");
      e.source = spec.at("ring").get<std::string>();
      if (e.source.rfind("builtin:", 0) != 0 && std::filesystem::path(e.source).is_relative())
        e.source = (base_dir / e.source).string();
      e.opts = apply_options(spec, base);
      e.tasks = tasks_of(spec, tasks);
      // report file name: label when known, else file stem; duplicates get a suffix
      std::string name = e.source.rfind("builtin:", 0) == 0 ? e.source.substr(8)
                                                            : std::filesystem::path(e.source).stem().string();
      if (int n = ++used[name]; n > 1) name += "-" + std::to_string(n);
      names.push_back(name);
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, manifest_path + ": " + e.what());
  }

  std::filesystem::create_directories(out_dir);
  std::vector<RowResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr write_error;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < entries.size();) {
      results[k] = run_entry(entries[k], names[k]);
      try {
        write_atomic(std::filesystem::path(out_dir) / (names[k] + ".json"), results[k].report.dump(2) + "\n");
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!write_error) write_error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (write_error) std::rethrow_exception(write_error);

  BatchResult out;
  out.csv = summary_header() + "\n";
  out.summary["rings"] = Json::array();
  std::size_t failed = 0, violated = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto& r = results[k];
    std::vector<std::string> fields;
    for (const auto& f : r.csv) fields.push_back(csv_field(f));
    out.csv += join(fields, ",") + "\n";
    Json row;
    row["report"] = names[k] + ".json";
    row["label"] = r.csv[0];
    row["status"] = r.failed ? "FAILED" : "OK";
    if (r.failed) row["error"] = r.csv.back();
    out.summary["rings"].push_back(std::move(row));
    failed += r.failed;
    violated += r.violated;
  }
  write_atomic(std::filesystem::path(out_dir) / "summary.csv", out.csv);
  out.summary["failed"] = failed;
  out.summary["violated"] = violated;
  out.exit_code = failed || violated ? 2 : 0;
  return out;
}

}  // namespace frobtest
