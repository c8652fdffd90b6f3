#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobtest/caps.hpp"
#include "frobtest/certified.hpp"
#include "frobtest/presented_ring.hpp"

namespace frobtest {

using Json = nlohmann::ordered_json;

/// JSON ring description:
/// {"characteristic": p, "variables": [...], "relations": [...],
///  "order": "grevlex" | "lex" | "gradedlex", "label": "..."}.
struct RingFile {
  std::uint32_t characteristic = 2;
  std::vector<std::string> variables;
  std::vector<std::string> relations;
  std::string order = "grevlex";
  std::string label;

  static RingFile from_json(const Json& j);
  Json to_json() const;
  /// Throws Parse / InvalidArgument on a malformed description.
  PresentedRing build() const;
};

/// Names of the shipped example rings, in library order.
const std::vector<std::string>& builtin_ring_names();
RingFile builtin_ring(const std::string& name);
/// A path to a ring file, or "builtin:NAME".
RingFile load_ring_file(const std::string& source);

/// Applies FROBTEST_MAX_E, FROBTEST_MAX_STAGE, FROBTEST_WINDOW,
/// FROBTEST_DEGREE_CAP, FROBTEST_GB_STEPS, FROBTEST_GB_DEGREE and
/// FROBTEST_MAX_S on top of `base`.
Caps caps_from_environment(Caps base = {},
                           const std::function<const char*(const char*)>& lookup = [](const char* k) {
                             return std::getenv(k);
                           });
Json caps_to_json(const Caps& caps);
Caps caps_from_json(const Json& j, Caps base = {});

/// 0 for CERTIFIED and CERTIFIED-WINDOW, 2 for UNCERTIFIED and TRUNCATED.
int exit_code(Status s);

enum class Verdict { Holds, Violated, Undecided };
const char* to_string(Verdict v);

struct CommandResult {
  Json report;
  std::string text;
  int exit_code = 0;
};

struct RunOptions {
  Caps caps;
  std::uint64_t seed = 1;
  unsigned samples = 5;
  unsigned degree = 2;  // maximal degree of monomials in sampled generators
  unsigned e_max = 2;   // subadditivity exponents 1..e_max
};

CommandResult cmd_closure(const RingFile& ring, const std::string& ideal, const RunOptions& opts);
CommandResult cmd_fte(const RingFile& ring, const std::string& ideal, const RunOptions& opts);
/// H^0_m(R/I); an empty ideal string means I = 0.
CommandResult cmd_h0(const RingFile& ring, const std::string& ideal, const RunOptions& opts);
/// HSL of H^i_m(R) for one degree, or all degrees plus the bound. `sequence`
/// names the system of parameters; empty picks a linear one.
CommandResult cmd_hsl(const RingFile& ring, std::optional<int> degree, const std::string& sequence,
                      const RunOptions& opts);

/// Fte(q) against sum_k C(d,k) HSL(H^k_m(R)) over sampled parameter ideals.
/// A sample HOLDS when its Fte is CERTIFIED, the bound is not TRUNCATED and
/// Fte <= bound.
CommandResult cmd_verify_bound(const RingFile& ring, const RunOptions& opts);
/// Identity Fte(q) = HSL_R(H^0(R/q)), subadditivity for e = 1..e_max and the
/// degree-0 ladder, per sampled parameter ideal.
CommandResult cmd_verify_properties(const RingFile& ring, const RunOptions& opts);

/// Manifest: {"rings": [source | {"ring": source, "seed", "samples",
/// "degree", "tasks"}], "seed", "samples", "degree", "tasks", "caps"}.
/// Writes <out_dir>/<label>.json per ring and <out_dir>/summary.csv.
struct BatchResult {
  Json summary;
  std::string csv;
  int exit_code = 0;
};
BatchResult cmd_batch(const std::string& manifest_path, const std::string& out_dir, unsigned parallelism,
                      const RunOptions& defaults);

/// Header row of summary.csv.
const std::string& summary_header();

}  // namespace frobtest
