#include "armgrasp/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace armgrasp {

const char* to_string(QualityGroup g) {
  switch (g) {
    case QualityGroup::very_good: return "very_good";
    case QualityGroup::good: return "good";
    case QualityGroup::fair: return "fair";
    case QualityGroup::bad: return "bad";
  }
  return "?";
}

int arm_metric(const Scene& scene, const RigidTransform& obj_pose, const SqObject& obj,
               const Grasp& g, int phi_samples) {
  RigidTransform hand = g.hand_pose_for(obj_pose);
  HeldObject held = g.held(obj);
  int count = 0;
  for (const JointConfig& q : ik_solution_set(scene.arm, hand, phi_samples))
    if (!arm_in_collision(scene, q, held)) ++count;
  return count;
}

std::vector<int> arm_metrics(const Scene& scene, const RigidTransform& obj_pose,
                             const SqObject& obj, const std::vector<Grasp>& grasps,
                             int phi_samples) {
  std::vector<int> out(grasps.size(), 0);
  int n = static_cast<int>(grasps.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    out[i] = arm_metric(scene, obj_pose, obj, grasps[i], phi_samples);
  return out;
}

std::vector<int> arm_metrics_serial(const Scene& scene, const RigidTransform& obj_pose,
                                    const SqObject& obj,
                                    const std::vector<Grasp>& grasps, int phi_samples) {
  std::vector<int> out;
  out.reserve(grasps.size());
  for (const Grasp& g : grasps)
    out.push_back(arm_metric(scene, obj_pose, obj, g, phi_samples));
  return out;
}

bool exist_ik_sol(const Scene& scene, const SqObject& obj, const RigidTransform& obj_pose,
                  const Grasp& g, int phi_samples) {
  return exist_ik_sol_hand(scene, g.hand_pose_for(obj_pose), phi_samples, g.held(obj));
}

bool exist_ik_sol_hand(const Scene& scene, const RigidTransform& hand_pose,
                       int phi_samples, const std::optional<HeldObject>& held) {
  IkSolver solver(scene.arm, hand_pose);
  if (!solver.reachable()) return false;
  for (int k = 0; k < phi_samples; ++k) {
    double phi = -M_PI + 2.0 * M_PI * k / phi_samples;
    for (const JointConfig& q : solver.solve(phi))
      if (!arm_in_collision(scene, q, held)) return true;
  }
  return false;
}

std::vector<JointConfig> collision_free_ik(const Scene& scene,
                                           const RigidTransform& hand_pose,
                                           int phi_samples,
                                           const std::optional<HeldObject>& held) {
  std::vector<JointConfig> out;
  for (const JointConfig& q : ik_solution_set(scene.arm, hand_pose, phi_samples))
    if (!arm_in_collision(scene, q, held)) out.push_back(q);
  return out;
}

std::vector<double> feature_scale(const std::vector<double>& v) {
  if (v.empty()) return {};
  auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  double lo = *lo_it, hi = *hi_it;
  std::vector<double> out(v.size(), 0.0);
  if (hi > lo)
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
  return out;
}

RankedGraspSet rank_m_ag(std::vector<RankedEntry> entries) {
  RankedGraspSet set;
  set.entries = std::move(entries);
  if (set.entries.empty()) return set;

  double mean = 0.0;
  for (const RankedEntry& e : set.entries) mean += e.arm_metric;
  mean /= set.entries.size();
  double var = 0.0;
  for (const RankedEntry& e : set.entries)
    var += (e.arm_metric - mean) * (e.arm_metric - mean);
  double stddev = std::sqrt(var / set.entries.size());
  set.arm_mean = mean;
  set.arm_stddev = stddev;

  for (RankedEntry& e : set.entries) {
    double x = e.arm_metric;
    if (stddev == 0.0)
      e.group = QualityGroup::fair;  // no spread, no arm-metric information
    else if (x > mean + stddev)
      e.group = QualityGroup::very_good;
    else if (x > mean)
      e.group = QualityGroup::good;
    else if (x > mean - stddev)
      e.group = QualityGroup::fair;
    else
      e.group = QualityGroup::bad;
  }

  set.order.resize(set.entries.size());
  for (std::size_t i = 0; i < set.order.size(); ++i) set.order[i] = static_cast<int>(i);
  std::stable_sort(set.order.begin(), set.order.end(), [&](int a, int b) {
    const RankedEntry& ea = set.entries[a];
    const RankedEntry& eb = set.entries[b];
    if (ea.group != eb.group) return static_cast<int>(ea.group) < static_cast<int>(eb.group);
    return ea.grasp_metric < eb.grasp_metric;
  });
  return set;
}

RankedGraspSet rank_m_ag(const std::vector<Grasp>& grasps,
                         const std::vector<double>& arm_values,
                         const std::vector<double>& grasp_values) {
  std::vector<RankedEntry> entries(grasps.size());
  for (std::size_t i = 0; i < grasps.size(); ++i) {
    entries[i].grasp = grasps[i];
    entries[i].grasp_id = static_cast<int>(i);
    entries[i].arm_metric = arm_values[i];
    entries[i].grasp_metric = grasp_values[i];
  }
  return rank_m_ag(std::move(entries));
}

RankedGraspSet rank_average_values(const std::vector<Grasp>& grasps,
                                   const std::vector<double>& start_values,
                                   const std::vector<std::optional<double>>& goal_values,
                                   const std::vector<double>& grasp_values,
                                   const std::vector<std::optional<RigidTransform>>& goal_guesses) {
  std::vector<int> kept;
  for (std::size_t i = 0; i < grasps.size(); ++i)
    if (goal_values[i]) kept.push_back(static_cast<int>(i));
  if (kept.empty()) return {};  // no feasible goal anywhere: task infeasible

  std::vector<double> start_raw, goal_raw;
  for (int i : kept) {
    start_raw.push_back(start_values[i]);
    goal_raw.push_back(*goal_values[i]);
  }
  std::vector<double> start_scaled = feature_scale(start_raw);
  std::vector<double> goal_scaled = feature_scale(goal_raw);

  std::vector<RankedEntry> entries(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    int i = kept[k];
    entries[k].grasp = grasps[i];
    entries[k].grasp_id = i;
    entries[k].arm_metric = start_scaled[k] + goal_scaled[k];
    entries[k].grasp_metric = grasp_values[i];
    entries[k].goal_guess = goal_guesses[i];
  }
  return rank_m_ag(std::move(entries));
}

RankedGraspSet rank_average(const Scene& scene, const SqObject& obj,
                            const std::vector<Grasp>& grasps,
                            const RigidTransform& start_pose,
                            const std::vector<std::optional<RigidTransform>>& goal_guesses,
                            int phi_samples) {
  std::vector<int> start_counts = arm_metrics(scene, start_pose, obj, grasps, phi_samples);
  std::vector<double> start_values(start_counts.begin(), start_counts.end());
  std::vector<std::optional<double>> goal_values(grasps.size());
  std::vector<double> grasp_values(grasps.size());
  for (std::size_t i = 0; i < grasps.size(); ++i) {
    grasp_values[i] = grasp_metric(obj, grasps[i]);
    if (goal_guesses[i])
      goal_values[i] =
          arm_metric(scene, *goal_guesses[i], obj, grasps[i], phi_samples);
  }
  return rank_average_values(grasps, start_values, goal_values, grasp_values,
                             goal_guesses);
}

}  // namespace armgrasp
