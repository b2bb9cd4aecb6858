#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "armgrasp/planner.hpp"

namespace armgrasp {

enum class TaskKind { pick_place, pour };
enum class RankMode { start, goal, average };

const char* to_string(TaskKind k);
const char* to_string(RankMode m);

struct Bounds2D {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  TaskKind task_kind = TaskKind::pick_place;
  Scene base_scene;               // arm, table, obstacles; task objects are sampled in
  std::vector<SqObject> objects;  // pick-and-place objects, or pourers
  SqObject receiver;              // pour only
  std::vector<RankMode> modes{RankMode::start, RankMode::goal, RankMode::average};
  Bounds2D start_bounds, goal_bounds, receiver_bounds;
  int phi_samples = 64;
  int rrt_budget = kDefaultRrtBudget;
  int pick_rank = 0;  // rank to execute; -1 selects the worst-ranked grasp
  int side_grasps = 8;
  int top_grasps = 4;
  int goal_steps = kDefaultGoalSteps;
  int pour_thetas = kDefaultPourThetas;
  double pour_clearance = kDefaultPourClearance;
  double success_tolerance = 0.02;
};

struct Scenario {
  Scene scene;
  std::optional<PickPlaceTask> pick_place;
  std::optional<PouringTask> pouring;
};

struct ScenarioInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic random scenario for (seed, object, trial): uniform start pose
/// and goal position (pick-and-place) or receiver/pourer placements (pouring),
/// all collision-free and inside gross reach. Throws ScenarioInfeasible after
/// 100 rejected attempts.
Scenario sample_scenario(const ScenarioConfig& config, const SqObject& object,
                         int trial);

struct ResultRow {
  std::string object;
  RankMode mode = RankMode::start;
  int trial = 0;
  bool success = false;
  double hand_disp_m = 0.0;  // meaningful only on success
  long plan_nodes = 0;
  double plan_wall_s = 0.0;
  int grasp_id = -1;
  std::string group = "none";
};

struct SummaryRow {
  std::string object;
  RankMode mode = RankMode::start;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_disp_m = 0.0;  // over successful trials
  double mean_nodes = 0.0;
  double mean_wall_s = 0.0;
};

struct SuiteResult {
  std::vector<ResultRow> rows;       // ordered by (object, mode, trial)
  std::vector<SummaryRow> summary;   // one per object x mode
  int infeasible_trials = 0;
  int total_trials = 0;
};

/// Full paired evaluation: every requested mode is ranked and executed on the
/// identical sampled scenario and candidate grasp set. Trials run in a work
/// pool (threads = 0 uses the OpenMP default, 1 forces the serial path);
/// results are canonicalized by trial id, so the thread count never changes
/// the output.
SuiteResult run_suite(const ScenarioConfig& config, int threads = 0);

/// Summaries recomputed from rows (used both internally and as a consistency
/// oracle).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

std::string to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// CSV with the wall-clock column blanked, for byte-identity comparisons.
std::string strip_wall_column(const std::string& csv);

}  // namespace armgrasp
