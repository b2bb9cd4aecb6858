#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "armgrasp/metrics.hpp"
#include "armgrasp/tasks.hpp"
#include "armgrasp/world.hpp"

namespace armgrasp {

/// Collision-free joint-space path; consecutive waypoints validate at the
/// stated interpolation resolution.
struct JointPath {
  std::vector<JointConfig> waypoints;
  double resolution = 0.02;  // rad, max per-joint step between checks
};

struct PlanStats {
  long nodes = 0;  // nodes added to the tree (deterministic effort measure)
  double wall_seconds = 0.0;
};

constexpr double kRrtGoalBias = 0.1;
constexpr double kRrtStep = 0.1;          // rad, extension step
constexpr int kDefaultRrtBudget = 50000;  // node budget

/// Joint-space RRT with greedy connect extensions and goal bias. Deterministic
/// for a fixed seed. Returns nothing when the budget runs out or an endpoint
/// is already in collision.
std::optional<JointPath> plan_rrt(const Scene& scene, const JointConfig& start,
                                  const JointConfig& goal,
                                  const std::optional<HeldObject>& held,
                                  std::uint64_t seed, int budget,
                                  PlanStats* stats = nullptr);

/// Interpolated collision check between two configurations.
bool segment_valid(const Scene& scene, const JointConfig& a, const JointConfig& b,
                   const std::optional<HeldObject>& held, double resolution = 0.02);

/// Cartesian tool-point chord length summed along the path at its resolution.
double path_hand_displacement(const ArmModel& arm, const JointPath& path);

struct TaskOutcome {
  bool success = false;
  std::string failed_stage;          // reach / transport / place / tilt / return
  double hand_displacement = 0.0;    // meters, meaningful on success
  long plan_nodes = 0;
  double plan_wall_seconds = 0.0;
  int grasp_id = -1;
  QualityGroup group = QualityGroup::fair;
};

/// Run a pick-and-place with the grasp at the given rank: reach the object,
/// transport it to the grasp's goal pose guess, retreat to the ready posture.
TaskOutcome execute_pick_place(const Scene& scene, const PickPlaceTask& task,
                               const RankedGraspSet& ranked, int pick_rank,
                               int budget, std::uint64_t seed, int phi_samples);

/// Run a pouring task with the grasp at the given rank: reach the pourer,
/// transport it to a rim pose that passes the tilt check, retreat.
TaskOutcome execute_pouring(const Scene& scene, const PouringTask& task,
                            const RankedGraspSet& ranked, int pick_rank, int budget,
                            std::uint64_t seed, int phi_samples);

}  // namespace armgrasp
