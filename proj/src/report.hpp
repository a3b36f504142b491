#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "kaehler.hpp"
#include "total.hpp"

namespace brst::report {

struct RunConfig {
  char algebra_type = 'A';
  int rank = 1;
  std::vector<Rational> lambda;
  std::vector<Rational> chi;
  std::string suite = "all";  // identities | cohomology | conjecture | all
  std::string out_path;       // empty: stdout
  std::string format = "json";
  long max_dim = 2000000;       // refusal ceiling on enumerated spaces
  long full_check_limit = 4096; // full column sweeps below this dimension
  int samples = 200;            // sampled checks above it
  std::uint64_t seed = 20130601;
  int threads = 1;
  bool timings = false;
};

struct IdentityRecord {
  std::string label;
  std::string status;  // pass | fail | skipped
  std::string domain;  // space and check mode
  std::string counterexample;
};

// One fully-built instance with stable ownership.
struct Instance {
  std::shared_ptr<roots::RootDatum> datum;
  std::shared_ptr<rep::WeightModule> module;
  std::shared_ptr<total::TotalComplex> tc;
};

Instance makeInstance(char type, int rank, const roots::Weight& lambda,
                      const roots::Weight& chi);

struct VerificationReport {
  RunConfig config;
  std::vector<IdentityRecord> identities;
  std::vector<std::string> findings;

  // cohomology block
  bool has_cohomology = false;
  std::map<int, coho::DegreeDims> relative;
  std::map<int, int> relative_complex_dims;
  std::map<int, int> harmonic_dims;
  std::map<std::pair<int, int>, int> bidegree_dims;
  std::map<std::pair<int, int>, int> harmonic_bidegree_dims;
  bool z0_equals_harmonic0 = true;  // Z^0_rel = ker(lap)^0 as subspaces
  coho::ZeroDegreeReport zero_degree;
  bool has_absolute = false;
  coho::AbsoluteReport absolute;
  long anomalous_total_dim = 0;
  std::map<int, long> anomalous_dims_by_2r;
  long cluster_generated = -1;  // -1: not computed
  long ghost_kernel_dim = -1;
  std::vector<int> classical_dims;  // empty when skipped

  // conjecture block
  bool has_conjecture = false;
  kaehler::ConjectureResult conjecture;

  double wall_seconds = 0.0;
  int exitCode() const;
};

VerificationReport run(const RunConfig& cfg);

std::string emitJson(const VerificationReport& rep);
std::string emitText(const VerificationReport& rep);
std::string emitCsvSummary(const VerificationReport& rep);
// dispatcher honoring config.format; writes to config.out_path or returns
std::string emit(const VerificationReport& rep);

roots::Weight parseWeight(const std::string& csv, int rank);

}  // namespace brst::report
