#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sflab/sf_function.hpp"

namespace sflab {

// ---------------------------------------------------------------- orbits

enum class OrbitStatus { escaped, bounded_budget_exhausted, converged_to_cycle, overflow };
std::string to_string(OrbitStatus s);

struct OrbitRecord {
  std::vector<cplx> samples;  // z0, f(z0), ...; last entry always finite
  bool escaped = false;
  std::optional<std::size_t> escape_index;
  OrbitStatus final_status = OrbitStatus::bounded_budget_exhausted;
};

struct IterateOptions {
  std::size_t n_max = 1000;
  double escape_radius = 1e3;
  /// Stop when z_k returns within cycle_tol of one of the previous
  /// max_cycle_period samples along a non-repelling cycle.
  bool detect_cycles = true;
  int max_cycle_period = 32;
  double cycle_tol = 1e-12;
};

OrbitRecord iterate(const SFFunction& f, cplx z0, const IterateOptions& options = {});

// ---------------------------------------------------------------- cycles

enum class CycleClass {
  attracting,
  superattracting,
  repelling,
  rationally_indifferent,
  irrationally_indifferent
};
std::string to_string(CycleClass c);

struct CycleRecord {
  std::vector<cplx> points;
  int period = 1;
  cplx multiplier{};
  CycleClass classification = CycleClass::repelling;
  std::optional<double> rotation_number;
  double residual = 0.0;  // max_i |f(points[i]) - points[i+1 mod period]|
};

struct Box {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
};

struct PeriodicSearchOptions {
  int max_newton_steps = 200;
  double dedup_tol = 1e-8;
  double indifference_tol = 1e-8;
  /// Seeds whose Newton iterates leave this radius are abandoned.
  double divergence_radius = 1e6;
};

/// Newton search for solutions of f^n(z) = z from a grid x grid seed lattice.
/// Returned cycles are labelled with their exact period (a divisor of n),
/// deduplicated, classified, and listed in seed order.
std::vector<CycleRecord> find_periodic_points(const SFFunction& f, int period, const Box& box,
                                              int grid, double tol,
                                              const PeriodicSearchOptions& options = {});

/// Builds a record for the cycle through z of the given period.
CycleRecord make_cycle(const SFFunction& f, cplx z, int period, double indifference_tol = 1e-8);

CycleRecord classify_cycle(CycleRecord record, double indifference_tol);

/// Best rational p/q with q <= max_den approximating x, by continued fraction.
std::pair<long long, long long> best_rational(double x, long long max_den);

// ---------------------------------------------------------------- probes

enum class Correspondence { corresponds_likely, no_evidence, escaped, inconclusive };
std::string to_string(Correspondence c);

enum class SingularKind { critical_point, critical_value, asymptotic_value };
std::string to_string(SingularKind k);

struct CorrespondenceRecord {
  cplx start;
  SingularKind kind = SingularKind::critical_point;
  double min_distance = 0.0;       // min over gamma of distance to the orbit tail
  double accumulation_score = 0.0; // fraction of gamma within eps of the tail
  Correspondence status = Correspondence::inconclusive;
  std::size_t iterations = 0;
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRecord> records;
  std::size_t gamma_size = 0;
  double eps = 0.0;
};

struct ManeOptions {
  std::size_t n_iters = 100'000;
  double eps = 1e-2;
  double burn_in_fraction = 0.1;
  double escape_radius = 1e3;
  double corresponds_threshold = 0.9;
  double no_evidence_threshold = 0.1;
};

/// Orbit of one start point measured against the gamma samples.
CorrespondenceRecord probe_orbit(const SFFunction& f, cplx start, SingularKind kind,
                                 const std::vector<cplx>& gamma, const ManeOptions& options);

/// Runs probe_orbit for every critical point and asymptotic value of f.
CorrespondenceReport mane_probe(const SFFunction& f, const std::vector<cplx>& gamma,
                                const ManeOptions& options = {});

struct ExpansionResult {
  double value = 0.0;      // min over samples of |(f^n)'(z)|, +inf if all overflowed
  double log_value = 0.0;  // natural log of value
  std::vector<double> per_sample_log;
  std::vector<bool> overflowed;
};

/// min over z in samples of |prod_{j<n} f'(f^j(z))|, accumulated in log space.
ExpansionResult expansion_metric(const SFFunction& f, const std::vector<cplx>& samples, int n);

enum class SubhypClass {
  converges_to_attracting_cycle,
  numerically_preperiodic,
  recurrent_near_gamma,
  escaping,
  inconclusive
};
std::string to_string(SubhypClass c);

struct SubhypEntry {
  cplx value;
  SingularKind kind = SingularKind::critical_value;
  SubhypClass classification = SubhypClass::inconclusive;
  std::optional<double> accumulation_score;
};

struct SubhypReport {
  std::vector<SubhypEntry> entries;
  int recurrent_count = 0;
  /// Preperiodicity is a 1e-9 orbit self-distance surrogate.
  bool preperiodic_is_heuristic = true;
};

struct SubhypOptions {
  double preperiodic_tol = 1e-9;
  double escape_radius = 1e3;
  ManeOptions mane;
};

/// Classifies the forward orbit of every singular value of f.
SubhypReport subhyperbolicity_report(const SFFunction& f, std::size_t budget,
                                     const std::optional<std::vector<cplx>>& gamma,
                                     const SubhypOptions& options = {});

}  // namespace sflab
