#pragma once

#include <string>
#include <vector>

#include "core/hutchinson.hpp"

namespace fifs {

struct ExperimentParams {
  int grid_cells = 64;
  int levels = 16;
  std::vector<int> n_list = {2, 4, 8, 16};
  int n_max = 12;            // halving: iteration count
  double a = 0.0, b = 1.0;   // dirac_pair: the two point positions
  std::string metric = "euclid";
};

// "key=value" tokens separated by whitespace; nlist is comma-separated.
// Keys: grid, levels, nlist, nmax, a, b, metric. Empty string -> defaults.
ExperimentParams parse_experiment_options(const std::string& options);

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;

  struct Row {
    std::string tag;  // sequence name; sections get a comment line
    int n;
    double dhf, dh, dh0, dinf;
  };
  std::vector<Row> rows;

  struct Verdict {
    std::string text;  // names the inequality and the measured values
    bool pass;
  };
  std::vector<Verdict> verdicts;

  bool all_pass() const;
  std::string to_text() const;
};

// Ramp family u_n (1 - x up to 1/n, then flat) against the constant-one set:
// the cut at the top level pins d_HF at 1 while the hypograph distance
// decays like 1/n. Requires n | grid and n | levels so the quantized values
// are exact.
ExperimentReport exp_hypo_vs_dhf(const ExperimentParams& p);

// chi_a plus a 1/n-high spike at b against chi_a: sup and hypograph-with-
// base-plane distances vanish, d_h and d_HF stay at d(a,b).
ExperimentReport exp_dirac_pair(const ExperimentParams& p);

// Single halving branch from chi_1: iterates are marching Dirac sets,
// d_HF to chi_0 halves every step, the sup gap at the moving point stays 1.
ExperimentReport exp_halving(const ExperimentParams& p);

// Convergence verdicts under {euclid} versus the directed closure of
// {proj:0, proj:1} must agree on every sequence family (the sequences run
// along the x axis of a 2D grid).
ExperimentReport exp_multimetric_agreement(const ExperimentParams& p);

ExperimentReport run_experiment(const std::string& name,
                                const ExperimentParams& p);

}  // namespace fifs
