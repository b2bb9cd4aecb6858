#include "armgrasp/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace armgrasp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t trial_seed(const ScenarioConfig& config, const SqObject& object,
                         int trial) {
  return splitmix64(config.seed ^ splitmix64(fnv1a(object.name)) ^
                    splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

bool in_reach(const ArmModel& arm, const Vec3& p) {
  return (p - arm.shoulder_point()).norm() <= arm.max_reach() - 0.02;
}

}  // namespace

const char* to_string(TaskKind k) {
  return k == TaskKind::pick_place ? "pick_place" : "pour";
}

const char* to_string(RankMode m) {
  switch (m) {
    case RankMode::start: return "start";
    case RankMode::goal: return "goal";
    case RankMode::average: return "average";
  }
  return "?";
}

Scenario sample_scenario(const ScenarioConfig& config, const SqObject& object,
                         int trial) {
  std::mt19937_64 rng(trial_seed(config, object, trial));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Scene& base = config.base_scene;
  double top = base.table_top();

  auto draw_xy = [&](const Bounds2D& b) {
    double x = b.x0 + unit(rng) * (b.x1 - b.x0);
    double y = b.y0 + unit(rng) * (b.y1 - b.y0);
    return Vec3(x, y, top);
  };

  Scenario s;
  s.scene = base;

  if (config.task_kind == TaskKind::pick_place) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Vec3 start_pos = draw_xy(config.start_bounds);
      double yaw = -M_PI + 2.0 * M_PI * unit(rng);
      Vec3 goal_pos = draw_xy(config.goal_bounds);
      RigidTransform start_pose(RigidTransform::rot_z(yaw).rot, start_pos);

      if (!in_reach(base.arm, start_pos) || !in_reach(base.arm, goal_pos)) continue;
      if (object_pose_in_collision(base, object, start_pose)) continue;
      if (object_pose_in_collision(base, object,
                                   RigidTransform::translation(goal_pos)))
        continue;

      s.scene.objects.push_back({object, start_pose});
      PickPlaceTask task;
      task.object = object;
      task.start_pose = start_pose;
      task.goal_position = goal_pos;
      task.success_tolerance = config.success_tolerance;
      s.pick_place = task;
      return s;
    }
  } else {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Vec3 recv_pos = draw_xy(config.receiver_bounds);
      Vec3 pour_pos = draw_xy(config.start_bounds);
      double yaw = -M_PI + 2.0 * M_PI * unit(rng);
      RigidTransform recv_pose = RigidTransform::translation(recv_pos);
      RigidTransform pour_pose(RigidTransform::rot_z(yaw).rot, pour_pos);

      if (!in_reach(base.arm, recv_pos) || !in_reach(base.arm, pour_pos)) continue;
      if (object_pose_in_collision(base, config.receiver, recv_pose)) continue;
      Scene with_receiver = base;
      with_receiver.objects.push_back({config.receiver, recv_pose});
      if (object_pose_in_collision(with_receiver, object, pour_pose)) continue;

      s.scene.objects.push_back({config.receiver, recv_pose});
      s.scene.objects.push_back({object, pour_pose});
      PouringTask task;
      task.pourer = object;
      task.pourer_start = pour_pose;
      task.receiver = config.receiver;
      task.receiver_pose = recv_pose;
      s.pouring = task;
      return s;
    }
  }
  throw ScenarioInfeasible("no collision-free placement found in 100 attempts");
}

namespace {

std::vector<ResultRow> run_trial(const ScenarioConfig& config, const SqObject& object,
                                 int trial) {
  std::vector<ResultRow> rows;
  auto failure_rows = [&]() {
    for (RankMode mode : config.modes) {
      ResultRow row;
      row.object = object.name;
      row.mode = mode;
      row.trial = trial;
      rows.push_back(row);
    }
    return rows;
  };

  Scenario scenario;
  try {
    scenario = sample_scenario(config, object, trial);
  } catch (const ScenarioInfeasible&) {
    return failure_rows();
  }

  std::vector<Grasp> grasps =
      generate_grasps(object, config.side_grasps, config.top_grasps);
  if (grasps.empty()) return failure_rows();

  const Scene& scene = scenario.scene;
  RigidTransform start_pose = scenario.pick_place ? scenario.pick_place->start_pose
                                                  : scenario.pouring->pourer_start;

  std::vector<double> grasp_values(grasps.size());
  for (std::size_t i = 0; i < grasps.size(); ++i)
    grasp_values[i] = grasp_metric(object, grasps[i]);

  std::vector<int> start_counts =
      arm_metrics(scene, start_pose, object, grasps, config.phi_samples);
  std::vector<double> start_values(start_counts.begin(), start_counts.end());

  std::vector<std::optional<RigidTransform>> guesses =
      scenario.pick_place
          ? goal_pose_guesses(scene, *scenario.pick_place, grasps, config.goal_steps,
                              config.phi_samples)
          : pouring_goal_guesses_for_grasps(scene, *scenario.pouring, grasps,
                                            config.pour_thetas, config.pour_clearance,
                                            config.phi_samples);

  std::vector<std::optional<double>> goal_values(grasps.size());
  for (std::size_t i = 0; i < grasps.size(); ++i)
    if (guesses[i])
      goal_values[i] = arm_metric(scene, *guesses[i], object, grasps[i],
                                  config.phi_samples);

  std::uint64_t exec_seed = trial_seed(config, object, trial) ^ 0xabcdefULL;
  for (RankMode mode : config.modes) {
    RankedGraspSet ranked;
    switch (mode) {
      case RankMode::start: {
        std::vector<RankedEntry> entries(grasps.size());
        for (std::size_t i = 0; i < grasps.size(); ++i) {
          entries[i].grasp = grasps[i];
          entries[i].grasp_id = static_cast<int>(i);
          entries[i].arm_metric = start_values[i];
          entries[i].grasp_metric = grasp_values[i];
          entries[i].goal_guess = guesses[i];
        }
        ranked = rank_m_ag(std::move(entries));
        break;
      }
      case RankMode::goal: {
        std::vector<RankedEntry> entries;
        for (std::size_t i = 0; i < grasps.size(); ++i) {
          if (!goal_values[i]) continue;
          RankedEntry e;
          e.grasp = grasps[i];
          e.grasp_id = static_cast<int>(i);
          e.arm_metric = *goal_values[i];
          e.grasp_metric = grasp_values[i];
          e.goal_guess = guesses[i];
          entries.push_back(e);
        }
        ranked = rank_m_ag(std::move(entries));
        break;
      }
      case RankMode::average:
        ranked = rank_average_values(grasps, start_values, goal_values, grasp_values,
                                     guesses);
        break;
    }

    ResultRow row;
    row.object = object.name;
    row.mode = mode;
    row.trial = trial;
    if (!ranked.empty()) {
      int rank = config.pick_rank < 0 ? static_cast<int>(ranked.size()) - 1
                                      : config.pick_rank;
      TaskOutcome outcome =
          scenario.pick_place
              ? execute_pick_place(scene, *scenario.pick_place, ranked, rank,
                                   config.rrt_budget, exec_seed, config.phi_samples)
              : execute_pouring(scene, *scenario.pouring, ranked, rank,
                                config.rrt_budget, exec_seed, config.phi_samples);
      row.success = outcome.success;
      row.hand_disp_m = outcome.hand_displacement;
      row.plan_nodes = outcome.plan_nodes;
      row.plan_wall_s = outcome.plan_wall_seconds;
      row.grasp_id = outcome.grasp_id;
      row.group = outcome.grasp_id >= 0 ? to_string(outcome.group) : "none";
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> summary;
  auto find = [&](const std::string& object, RankMode mode) -> SummaryRow& {
    for (SummaryRow& s : summary)
      if (s.object == object && s.mode == mode) return s;
    summary.push_back({object, mode});
    return summary.back();
  };
  for (const ResultRow& row : rows) {
    SummaryRow& s = find(row.object, row.mode);
    ++s.trials;
    if (row.success) {
      ++s.successes;
      s.mean_disp_m += row.hand_disp_m;
    }
    s.mean_nodes += static_cast<double>(row.plan_nodes);
    s.mean_wall_s += row.plan_wall_s;
  }
  for (SummaryRow& s : summary) {
    s.success_rate = s.trials > 0 ? static_cast<double>(s.successes) / s.trials : 0.0;
    if (s.successes > 0) s.mean_disp_m /= s.successes;
    if (s.trials > 0) {
      s.mean_nodes /= s.trials;
      s.mean_wall_s /= s.trials;
    }
  }
  return summary;
}

SuiteResult run_suite(const ScenarioConfig& config, int threads) {
  SuiteResult result;
  int n_objects = static_cast<int>(config.objects.size());
  int total = n_objects * config.trials;
  std::vector<std::vector<ResultRow>> per_trial(total);

  if (threads == 1) {
    for (int flat = 0; flat < total; ++flat)
      per_trial[flat] =
          run_trial(config, config.objects[flat / config.trials], flat % config.trials);
  } else {
#ifdef _OPENMP
    if (threads > 1) omp_set_num_threads(threads);
#endif
#pragma omp parallel for schedule(dynamic)
    for (int flat = 0; flat < total; ++flat)
      per_trial[flat] =
          run_trial(config, config.objects[flat / config.trials], flat % config.trials);
  }

  // Canonical order: object (config order), mode (config order), trial.
  for (int obj = 0; obj < n_objects; ++obj)
    for (std::size_t m = 0; m < config.modes.size(); ++m)
      for (int t = 0; t < config.trials; ++t)
        result.rows.push_back(per_trial[obj * config.trials + t][m]);

  result.total_trials = total;
  for (int flat = 0; flat < total; ++flat) {
    bool infeasible = true;
    for (const ResultRow& r : per_trial[flat])
      if (r.grasp_id >= 0) infeasible = false;
    if (infeasible) ++result.infeasible_trials;
  }

  result.summary = summarize(result.rows);
  return result;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "object,mode,trial,success,hand_disp_m,plan_nodes,plan_wall_s,grasp_id,group\n";
  char buf[160];
  for (const ResultRow& row : rows) {
    std::string disp;
    if (row.success) {
      std::snprintf(buf, sizeof(buf), "%.6f", row.hand_disp_m);
      disp = buf;
    }
    std::snprintf(buf, sizeof(buf), "%.6f", row.plan_wall_s);
    std::string wall = buf;
    out += row.object;
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += row.success ? '1' : '0';
    out += ',';
    out += disp;
    out += ',';
    out += std::to_string(row.plan_nodes);
    out += ',';
    out += wall;
    out += ',';
    out += std::to_string(row.grasp_id);
    out += ',';
    out += row.group;
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << to_csv(rows);
}

std::string strip_wall_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::string rebuilt;
    int field = 0;
    for (char c : line) {
      if (c == ',') {
        ++field;
        rebuilt += ',';
      } else if (field != 6) {
        rebuilt += c;
      }
    }
    out += rebuilt;
    out += '\n';
  }
  return out;
}

}  // namespace armgrasp
