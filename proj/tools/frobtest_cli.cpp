#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "frobtest/error.hpp"
#include "frobtest/experiment.hpp"

using namespace frobtest;

namespace {

struct Flags {
  std::string ring, ideal, manifest, out_dir = "batch_out";
  int degree = -1;
  bool json = false;
  unsigned jobs = 0;
};

void add_caps(CLI::App* cmd, Caps& caps) {
  cmd->add_option("--max-e", caps.max_e, "Frobenius exponent search bound");
  cmd->add_option("--max-stage", caps.max_stage, "Koszul tower length");
  cmd->add_option("--window", caps.window, "repeats required for a stationary chain");
  cmd->add_option("--degree-cap", caps.degree_cap, "internal degree bound for Koszul linear algebra");
  cmd->add_option("--gb-steps", caps.gb_steps, "reduction steps per Groebner basis");
  cmd->add_option("--gb-degree", caps.gb_degree, "degree bound for Groebner basis pairs");
  cmd->add_option("--max-s", caps.max_s, "limit-closure chain bound");
  cmd->add_option("--max-basis", caps.max_basis, "standard monomials enumerated per quotient");
  cmd->add_option("--max-matrix", caps.max_matrix, "coefficients stored by one linear elimination");
}

void add_sampling(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--seed", opts.seed, "sampling seed");
  cmd->add_option("--samples", opts.samples, "number of sampled parameter ideals");
  cmd->add_option("--sample-degree", opts.degree, "maximal monomial degree in sampled generators");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius closures, test exponents and HSL numbers over F_p"};
  app.require_subcommand(1);
  RunOptions opts;
  Flags f;
  try {
    opts.caps = caps_from_environment();
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }

  auto ring_cmd = [&](const char* name, const char* help, bool needs_ideal) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--ring", f.ring, "ring file or builtin:NAME")->required();
    auto* ideal = cmd->add_option("--ideal", f.ideal, "comma separated generators");
    if (needs_ideal) ideal->required();
    cmd->add_flag("--json", f.json, "print the JSON report");
    add_caps(cmd, opts.caps);
    return cmd;
  };
  auto* closure = ring_cmd("closure", "Frobenius closure of an ideal", true);
  auto* fte = ring_cmd("fte", "Frobenius test exponent of an ideal", true);
  auto* h0 = ring_cmd("h0", "H^0_m(R/I) and its HSL number", false);
  auto* hsl = ring_cmd("hsl", "HSL numbers of H^i_m(R); --ideal gives the system of parameters", false);
  hsl->add_option("--degree", f.degree, "cohomological degree (default: all)");
  hsl->add_option("--seed", opts.seed, "seed for choosing parameters");
  auto* bound = ring_cmd("verify-bound", "check Fte(q) <= sum C(d,k) HSL(H^k) on sampled q", false);
  add_sampling(bound, opts);
  auto* props = ring_cmd("verify-properties", "identity, subadditivity and ladder checks", false);
  add_sampling(props, opts);
  props->add_option("--e-max", opts.e_max, "subadditivity exponents 1..e_max");

  auto* batch = app.add_subcommand("batch", "run a manifest of rings");
  batch->add_option("manifest", f.manifest, "manifest JSON")->required();
  batch->add_option("--out", f.out_dir, "output directory");
  batch->add_option("--jobs", f.jobs, "rings processed concurrently (default: hardware threads)");
  batch->add_flag("--json", f.json, "print the JSON summary");
  add_sampling(batch, opts);
  add_caps(batch, opts.caps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (batch->parsed()) {
      const unsigned jobs = f.jobs ? f.jobs : std::max(1u, std::thread::hardware_concurrency());
      auto res = cmd_batch(f.manifest, f.out_dir, jobs, opts);
      std::cout << (f.json ? res.summary.dump(2) + "\n" : res.csv);
      return res.exit_code;
    }
    const auto ring = load_ring_file(f.ring);
    CommandResult res;
    if (closure->parsed()) res = cmd_closure(ring, f.ideal, opts);
    if (fte->parsed()) res = cmd_fte(ring, f.ideal, opts);
    if (h0->parsed()) res = cmd_h0(ring, f.ideal, opts);
    if (hsl->parsed())
      res = cmd_hsl(ring, f.degree < 0 ? std::nullopt : std::optional<int>(f.degree), f.ideal, opts);
    if (bound->parsed()) res = cmd_verify_bound(ring, opts);
    if (props->parsed()) res = cmd_verify_properties(ring, opts);
    std::cout << (f.json ? res.report.dump(2) + "\n" : res.text);
    return res.exit_code;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
