#pragma once

#include "agc/contract/contract.hpp"
#include "agc/library/library.hpp"
#include "agc/world/world.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agc::engine {

using contract::Contract;
using library::CandidateComposition;
using library::ComponentLibrary;

enum class Status { Complete, Failed, SearchResult, RepairResult };

std::string_view status_name(Status s) noexcept;

struct SearchEvidence {
  /// Quotient of the specification by the candidate.
  Contract quotient;
  bool quotient_consistent = false;
  /// Library and composition that refine the quotient, if any was found.
  std::optional<std::string> library;
  std::optional<CandidateComposition> found;
  /// compose(found, candidate), verified to refine the specification.
  std::optional<Contract> final_contract;
  /// Libraries whose best candidate did not refine the quotient, or whose
  /// composition with the candidate failed verification.
  std::vector<std::string> rejected;
};

struct RepairEvidence {
  Contract separation;
  Contract repaired;
};

struct AnalysisOutcome {
  Status status = Status::Failed;
  /// The contract that refines the (possibly repaired) specification.
  std::optional<Contract> refinement;
  CandidateComposition candidate;
  std::optional<SearchEvidence> search;
  std::optional<RepairEvidence> repair;
  std::string reason;
};

/// Which branch of the analysis runs.
enum class Route { Complete, Failed, Repair, Search };

std::string_view route_name(Route r) noexcept;

struct RouteInput {
  bool refines = false;
  double similarity = 0;
  bool force_repair = false;
  bool force_search = false;
  bool have_extra_libs = false;
};

inline constexpr double kRepairThreshold = 80.0;

/// First match of: refines -> Complete; similarity 0 -> Failed;
/// force_repair -> Repair; force_search with extra libraries -> Search;
/// similarity >= 80 -> Repair; extra libraries -> Search; else Failed.
/// Throws AnalysisError when both force flags are set.
Route route(const RouteInput &in);

struct AnalysisOptions {
  bool force_repair = false;
  bool force_search = false;
  /// Options for the candidate searches run inside the search procedure.
  library::CandidateOptions candidate;
};

/// Algorithm entry point. `candidate` must have been computed for `c` from
/// `lib` (AnalysisError otherwise).
AnalysisOutcome refinement_analysis(const Contract &c,
                                    const ComponentLibrary &lib,
                                    const CandidateComposition &candidate,
                                    std::span<const ComponentLibrary> extra_libs,
                                    const AnalysisOptions &options,
                                    const world::WorldModel &w,
                                    const contract::Context &ctx = {});

/// Looks for a refinement of quotient(c, candidate) in each extra library in
/// turn. Without a match the result carries the quotient only.
AnalysisOutcome search_procedure(const CandidateComposition &candidate,
                                 const Contract &c,
                                 std::span<const ComponentLibrary> extra_libs,
                                 const world::WorldModel &w,
                                 const library::CandidateOptions &options = {},
                                 const contract::Context &ctx = {});

/// Patches `c` to merge(separate(candidate, c), c). Throws AnalysisError when
/// the candidate already refines `c` or the patched contract is not refined
/// by the candidate.
AnalysisOutcome repair_procedure(const CandidateComposition &candidate,
                                 const Contract &c,
                                 const contract::Context &ctx = {});

} // namespace agc::engine
