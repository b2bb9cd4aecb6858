#include "armgrasp/scenario_io.hpp"

#include <fstream>
#include <sstream>

namespace armgrasp {

namespace {

struct Parser {
  std::string path;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + msg);
  }

  std::vector<double> numbers(const std::string& value, std::size_t count) const {
    std::istringstream in(value);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (out.size() != count)
      fail("expected " + std::to_string(count) + " numbers, got " +
           std::to_string(out.size()));
    return out;
  }

  Vec3 vec3(const std::string& value) const {
    auto n = numbers(value, 3);
    return Vec3(n[0], n[1], n[2]);
  }

  Bounds2D bounds(const std::string& value) const {
    auto n = numbers(value, 4);
    return {n[0], n[1], n[2], n[3]};
  }
};

ShapeClass parse_shape(const Parser& p, const std::string& value) {
  if (value == "cylinder") return ShapeClass::cylinder;
  if (value == "box") return ShapeClass::box;
  if (value == "cone") return ShapeClass::cone;
  p.fail("unknown shape: " + value);
}

}  // namespace

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open scenario file: " + path);

  ScenarioConfig config;
  config.base_scene.arm = ArmModel::generic();

  Parser p{path};
  std::string section;
  std::string line;
  Obb* obstacle = nullptr;
  SqObject* object = nullptr;
  Vec3 arm_base_xyz(0, 0, 0), arm_base_rpy(0, 0, 0);
  std::string receiver_name;

  while (std::getline(file, line)) {
    ++p.line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    {
      auto first = line.find_first_not_of(" \t\r");
      auto last = line.find_last_not_of(" \t\r");
      if (first != std::string::npos) trimmed = line.substr(first, last - first + 1);
    }
    if (trimmed.empty()) continue;

    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') p.fail("unterminated section header");
      section = trimmed.substr(1, trimmed.size() - 2);
      obstacle = nullptr;
      object = nullptr;
      if (section == "obstacle") {
        config.base_scene.obstacles.emplace_back();
        obstacle = &config.base_scene.obstacles.back();
      } else if (section == "object") {
        config.objects.emplace_back();
        object = &config.objects.back();
      } else if (section != "arm" && section != "table" && section != "task") {
        p.fail("unknown section [" + section + "]");
      }
      continue;
    }

    auto eq = trimmed.find('=');
    if (eq == std::string::npos) p.fail("expected key = value");
    std::string key = trimmed.substr(0, trimmed.find_last_not_of(" \t", eq - 1) + 1);
    std::string value = trimmed.substr(trimmed.find_first_not_of(" \t", eq + 1));

    ArmModel& arm = config.base_scene.arm;
    if (section == "arm") {
      if (key == "base") arm_base_xyz = p.vec3(value);
      else if (key == "base_rpy") arm_base_rpy = p.vec3(value);
      else if (key == "shoulder_offset") arm.shoulder_offset = p.numbers(value, 1)[0];
      else if (key == "upper_arm") arm.upper_arm = p.numbers(value, 1)[0];
      else if (key == "forearm") arm.forearm = p.numbers(value, 1)[0];
      else if (key == "wrist_to_tool") arm.wrist_to_tool = p.numbers(value, 1)[0];
      else if (key == "link_radii") {
        auto n = p.numbers(value, 4);
        for (int i = 0; i < 4; ++i) arm.link_radii[i] = n[i];
      } else if (key == "ready") {
        auto n = p.numbers(value, 7);
        for (int i = 0; i < 7; ++i) arm.ready[i] = n[i];
      } else if (key.rfind("limit", 0) == 0) {
        int idx = std::stoi(key.substr(5)) - 1;
        if (idx < 0 || idx > 6) p.fail("joint limit index out of range");
        auto n = p.numbers(value, 2);
        if (n[0] >= n[1]) p.fail("joint limit lower bound must be below upper");
        arm.joint_limits[idx] = {n[0], n[1]};
      } else {
        p.fail("unknown arm key: " + key);
      }
    } else if (section == "table") {
      if (key == "center") config.base_scene.table_center = p.vec3(value);
      else if (key == "half_extents") config.base_scene.table_half_extents = p.vec3(value);
      else p.fail("unknown table key: " + key);
    } else if (section == "obstacle") {
      if (key == "center") obstacle->pose.trans = p.vec3(value);
      else if (key == "half_extents") obstacle->half_extents = p.vec3(value);
      else if (key == "yaw")
        obstacle->pose.rot = RigidTransform::rot_z(p.numbers(value, 1)[0]).rot;
      else p.fail("unknown obstacle key: " + key);
    } else if (section == "object") {
      if (key == "name") object->name = value;
      else if (key == "shape") object->shape_class = parse_shape(p, value);
      else if (key == "radius") object->radius = p.numbers(value, 1)[0];
      else if (key == "height") {
        object->height = p.numbers(value, 1)[0];
        object->com = Vec3(0.0, 0.0, object->height / 2.0);
      } else if (key == "com") object->com = p.vec3(value);
      else p.fail("unknown object key: " + key);
    } else if (section == "task") {
      if (key == "kind") {
        if (value == "pick_place") config.task_kind = TaskKind::pick_place;
        else if (value == "pour") config.task_kind = TaskKind::pour;
        else p.fail("unknown task kind: " + value);
      } else if (key == "start_bounds") config.start_bounds = p.bounds(value);
      else if (key == "goal_bounds") config.goal_bounds = p.bounds(value);
      else if (key == "receiver_bounds") config.receiver_bounds = p.bounds(value);
      else if (key == "success_tolerance") config.success_tolerance = p.numbers(value, 1)[0];
      else if (key == "receiver") receiver_name = value;
      else if (key == "clearance") config.pour_clearance = p.numbers(value, 1)[0];
      else if (key == "side_grasps") config.side_grasps = static_cast<int>(p.numbers(value, 1)[0]);
      else if (key == "top_grasps") config.top_grasps = static_cast<int>(p.numbers(value, 1)[0]);
      else if (key == "goal_steps") config.goal_steps = static_cast<int>(p.numbers(value, 1)[0]);
      else if (key == "pour_thetas") config.pour_thetas = static_cast<int>(p.numbers(value, 1)[0]);
      else p.fail("unknown task key: " + key);
    } else {
      p.fail("key outside any section");
    }
  }

  config.base_scene.arm.base_pose = RigidTransform::from_rpy(arm_base_rpy, arm_base_xyz);

  if (config.task_kind == TaskKind::pour) {
    if (receiver_name.empty())
      throw std::runtime_error(path + ": pouring task needs a receiver");
    auto it = std::find_if(config.objects.begin(), config.objects.end(),
                           [&](const SqObject& o) { return o.name == receiver_name; });
    if (it == config.objects.end())
      throw std::runtime_error(path + ": receiver '" + receiver_name +
                               "' is not a declared object");
    config.receiver = *it;
    config.objects.erase(it);
  }
  if (config.objects.empty())
    throw std::runtime_error(path + ": no task objects declared");
  for (const SqObject& o : config.objects)
    if (o.radius <= 0.0 || o.height <= 0.0)
      throw std::runtime_error(path + ": object '" + o.name +
                               "' needs positive radius and height");
  return config;
}

}  // namespace armgrasp
