// Timing comparison between the serial reference kernels and their
// OpenMP-parallel counterparts.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "armgrasp/harness.hpp"

using namespace armgrasp;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Scene demo_scene() {
  Scene scene;
  scene.arm = ArmModel::generic();
  scene.arm.base_pose = RigidTransform::translation(Vec3(0.0, 0.0, 0.40));
  scene.table_center = Vec3(0.55, 0.0, 0.36);
  scene.table_half_extents = Vec3(0.35, 0.55, 0.36);
  return scene;
}

}  // namespace

int main() {
  Scene scene = demo_scene();
  SqObject can = SqObject::make("can", ShapeClass::cylinder, 0.035, 0.13);
  RigidTransform pose = RigidTransform::translation(Vec3(0.5, -0.2, scene.table_top()));
  scene.objects.push_back({can, pose});
  std::vector<Grasp> grasps = generate_grasps(can, 16, 8);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("arm-metric batch over %zu grasps, phi grid 64 (%d threads)\n",
              grasps.size(), threads);

  double t0 = now_seconds();
  std::vector<int> serial = arm_metrics_serial(scene, pose, can, grasps, 64);
  double t_serial = now_seconds() - t0;

  t0 = now_seconds();
  std::vector<int> parallel = arm_metrics(scene, pose, can, grasps, 64);
  double t_parallel = now_seconds() - t0;

  bool match = serial == parallel;
  std::printf("  serial   %8.1f ms\n", 1e3 * t_serial);
  std::printf("  parallel %8.1f ms   speedup %.2fx   results %s\n", 1e3 * t_parallel,
              t_serial / t_parallel, match ? "identical" : "DIFFER");

  ScenarioConfig config;
  config.base_scene = demo_scene();
  config.objects = {can};
  config.task_kind = TaskKind::pick_place;
  config.start_bounds = {0.35, -0.45, 0.68, -0.08};
  config.goal_bounds = {0.35, 0.08, 0.68, 0.45};
  config.trials = 10;
  config.seed = 7;

  std::printf("pick-and-place suite, %d paired trials x 3 modes\n", config.trials);
  t0 = now_seconds();
  SuiteResult s1 = run_suite(config, 1);
  double t_suite_serial = now_seconds() - t0;

  t0 = now_seconds();
  SuiteResult s2 = run_suite(config, 0);
  double t_suite_parallel = now_seconds() - t0;

  bool rows_match = strip_wall_column(to_csv(s1.rows)) == strip_wall_column(to_csv(s2.rows));
  std::printf("  serial   %8.1f ms\n", 1e3 * t_suite_serial);
  std::printf("  parallel %8.1f ms   speedup %.2fx   rows %s\n",
              1e3 * t_suite_parallel, t_suite_serial / t_suite_parallel,
              rows_match ? "identical" : "DIFFER");
  return match && rows_match ? 0 : 1;
}
