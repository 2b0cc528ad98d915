#include "agc/engine/engine.hpp"

#include "agc/error.hpp"

namespace agc::engine {

std::string_view status_name(Status s) noexcept {
  switch (s) {
  case Status::Complete:
    return "Complete";
  case Status::Failed:
    return "Failed";
  case Status::SearchResult:
    return "SearchResult";
  case Status::RepairResult:
    return "RepairResult";
  }
  return "unknown";
}

std::string_view route_name(Route r) noexcept {
  switch (r) {
  case Route::Complete:
    return "complete";
  case Route::Failed:
    return "failed";
  case Route::Repair:
    return "repair";
  case Route::Search:
    return "search";
  }
  return "unknown";
}

Route route(const RouteInput &in) {
  if (in.force_repair && in.force_search) {
    throw AnalysisError("repair and search cannot both be forced");
  }
  if (in.refines) return Route::Complete;
  if (in.similarity <= 0) return Route::Failed;
  if (in.force_repair) return Route::Repair;
  if (in.force_search && in.have_extra_libs) return Route::Search;
  if (in.similarity >= kRepairThreshold) return Route::Repair;
  if (in.have_extra_libs) return Route::Search;
  return Route::Failed;
}

AnalysisOutcome refinement_analysis(const Contract &c,
                                    const ComponentLibrary &lib,
                                    const CandidateComposition &candidate,
                                    std::span<const ComponentLibrary> extra_libs,
                                    const AnalysisOptions &options,
                                    const world::WorldModel &w,
                                    const contract::Context &ctx) {
  if (options.force_repair && options.force_search) {
    throw AnalysisError("repair and search cannot both be forced");
  }
  if (!(candidate.target == c)) {
    throw AnalysisError("candidate was computed for a different contract");
  }
  for (const auto &name : candidate.selection) {
    if (!lib.find(name)) {
      throw AnalysisError("candidate component '" + name +
                          "' is not in library '" + lib.name() + "'");
    }
  }

  const bool refines = contract::refines(candidate.composed, c, ctx);
  const Route r = route({refines, candidate.similarity, options.force_repair,
                         options.force_search, !extra_libs.empty()});
  switch (r) {
  case Route::Complete: {
    AnalysisOutcome out;
    out.status = Status::Complete;
    out.refinement = candidate.composed;
    out.candidate = candidate;
    out.reason = "the candidate refines the specification";
    return out;
  }
  case Route::Repair:
    return repair_procedure(candidate, c, ctx);
  case Route::Search:
    return search_procedure(candidate, c, extra_libs, w, options.candidate, ctx);
  case Route::Failed:
    break;
  }
  AnalysisOutcome out;
  out.status = Status::Failed;
  out.candidate = candidate;
  out.reason = candidate.similarity <= 0
                   ? "no library type is similar to the specification types"
                   : "similarity below the repair threshold and no library "
                     "to search";
  return out;
}

AnalysisOutcome search_procedure(const CandidateComposition &candidate,
                                 const Contract &c,
                                 std::span<const ComponentLibrary> extra_libs,
                                 const world::WorldModel &w,
                                 const library::CandidateOptions &options,
                                 const contract::Context &ctx) {
  AnalysisOutcome out;
  out.candidate = candidate;
  SearchEvidence ev;
  ev.quotient = contract::quotient(c, candidate.composed);
  ev.quotient_consistent = contract::is_consistent(ev.quotient, ctx);
  if (!ev.quotient_consistent) {
    out.status = Status::Failed;
    out.reason = "the quotient is inconsistent";
    out.search = std::move(ev);
    return out;
  }
  out.status = Status::SearchResult;
  for (const ComponentLibrary &extra : extra_libs) {
    std::optional<CandidateComposition> found;
    try {
      found = library::best_candidate_composition(ev.quotient, extra, w,
                                                  options, ctx);
    } catch (const ApCapExceeded &) {
      throw;
    } catch (const Error &) {
      ev.rejected.push_back(extra.name());
      continue;
    }
    if (!contract::refines(found->composed, ev.quotient, ctx)) {
      ev.rejected.push_back(extra.name());
      continue;
    }
    Contract final_contract = contract::compose(found->composed, candidate.composed);
    if (!contract::refines(final_contract, c, ctx)) {
      ev.rejected.push_back(extra.name());
      continue;
    }
    ev.library = extra.name();
    ev.found = std::move(found);
    ev.final_contract = final_contract;
    out.refinement = std::move(final_contract);
    out.reason = "library '" + extra.name() + "' refines the quotient";
    out.search = std::move(ev);
    return out;
  }
  out.reason = extra_libs.empty()
                   ? "no library to search; the quotient is left to implement"
                   : "no library refines the quotient; it is left to implement";
  out.search = std::move(ev);
  return out;
}

AnalysisOutcome repair_procedure(const CandidateComposition &candidate,
                                 const Contract &c,
                                 const contract::Context &ctx) {
  if (contract::refines(candidate.composed, c, ctx)) {
    throw AnalysisError("repair requested although the candidate already "
                        "refines the specification");
  }
  RepairEvidence ev;
  ev.separation = contract::separate(candidate.composed, c);
  ev.repaired = contract::merge(ev.separation, c);
  if (!contract::refines(candidate.composed, ev.repaired, ctx)) {
    throw AnalysisError("repaired specification is not refined by the "
                        "candidate");
  }
  AnalysisOutcome out;
  out.status = Status::RepairResult;
  out.candidate = candidate;
  out.refinement = candidate.composed;
  out.repair = std::move(ev);
  out.reason = "specification patched by separation and merging";
  return out;
}

} // namespace agc::engine
