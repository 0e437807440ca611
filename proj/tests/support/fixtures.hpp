#pragma once

#include <random>
#include <string>
#include <vector>

#include "crucible/schema.hpp"
#include "crucible/testcase.hpp"

namespace crucible::testing {

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
/// Loads tests/fixtures/<name>.als.
ModelSchema load_fixture(const std::string& name);
std::string fixture_source(const std::string& name);

// Canvases from the case studies. Each builds through the canvas edit
// operations, so it is reachable through allowed guidance verdicts.

/// List0 -header-> Node0 -link-> Node1, acyclic expected valid.
TestCase lists_two_node(const ModelSchema& schema);
/// State1 triggers Event0 to both State0 and State1; Init = State1; inv3 invalid.
TestCase lts_nondeterministic(const ModelSchema& schema);
/// Three states, three events, every one of the 27 transitions; inv3 invalid.
TestCase lts_maximal(const ModelSchema& schema);
/// User0 sees works that only User1 has in a profile; inv1 invalid.
TestCase cv_first(const ModelSchema& schema);
/// The extended three-user scenario; inv1 invalid.
TestCase cv_maximal(const ModelSchema& schema);

struct RandomCanvasOptions {
  /// Direct atom cap per concrete sig.
  std::map<std::string, int> maxAtoms;
  int defaultMaxAtoms = 2;
  int connectionAttempts = 6;
  /// Probability that a predicate gets a valid/invalid expectation.
  double predicateProbability = 0.5;
};

/// Random canvas built only from edits the guidance rules allow.
TestCase random_canvas(const ModelSchema& schema, std::mt19937& rng, const RandomCanvasOptions& options);

/// Deterministic canvas with exactly `atoms` atoms and `connections`
/// connections for the benchmark models ("lts" or "cv").
TestCase benchmark_canvas(const std::string& model, const ModelSchema& schema, int atoms, int connections);

}  // namespace crucible::testing
