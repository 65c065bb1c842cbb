// Copyright 2026 The multikin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multikin/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 json_vec(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("expected an array of 3 numbers");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json pose_json(const Pose& pose) {
  const auto q = pose.wxyz();
  return {{"p", vec_json(pose.position())}, {"q", json::array({q[0], q[1], q[2], q[3]})}};
}

Pose json_pose(const json& j) {
  const json& q = j.at("q");
  if (!q.is_array() || q.size() != 4) throw FormatError("expected a quaternion [w, x, y, z]");
  const std::array<double, 4> wxyz = {q.at(0).get<double>(), q.at(1).get<double>(),
                                      q.at(2).get<double>(), q.at(3).get<double>()};
  const double norm2 = wxyz[0] * wxyz[0] + wxyz[1] * wxyz[1] + wxyz[2] * wxyz[2] + wxyz[3] * wxyz[3];
  if (!(norm2 > 1e-12)) throw FormatError("zero quaternion");
  return Pose::from_wxyz(json_vec(j.at("p")), wxyz);
}

json edge_json(const GraphEdge& e) {
  json j;
  j["i"] = e.i;
  j["j"] = e.j;
  j["type"] = std::string(to_string(e.model.type()));
  j["k"] = e.model.k;
  j["n"] = e.n;
  j["log_lik"] = e.model.log_lik;
  j["axis_dir"] = nullptr;
  j["axis_point"] = nullptr;
  if (const auto* r = std::get_if<RigidParams>(&e.model.params)) {
    j["base"] = pose_json(r->fixed_transform);
  } else if (const auto* p = std::get_if<PrismaticParams>(&e.model.params)) {
    j["axis_dir"] = vec_json(p->axis);
    j["base"] = pose_json(p->base);
  } else {
    const auto& rot = std::get<RotationalParams>(e.model.params);
    j["axis_dir"] = vec_json(rot.axis_dir);
    j["axis_point"] = vec_json(rot.axis_point);
    j["base"] = pose_json(rot.zero_pose);
  }
  j["configs"] = e.model.configs;
  if (e.model.configs.empty()) {
    j["q_range"] = nullptr;
  } else {
    const auto [lo, hi] = std::minmax_element(e.model.configs.begin(), e.model.configs.end());
    j["q_range"] = json::array({*lo, *hi});
  }
  json bics = json::object();
  for (const auto& [type, value] : e.bic_all) bics[std::string(to_string(type))] = value;
  j["bic_all"] = bics;
  j["cost"] = e.cost;
  j["lingual"] = e.lingual;
  return j;
}

GraphEdge json_edge(const json& j) {
  GraphEdge e;
  e.i = j.at("i").get<std::string>();
  e.j = j.at("j").get<std::string>();
  const auto type = parse_model_type(j.at("type").get<std::string>());
  if (!type) throw FormatError("unknown edge type '" + j.at("type").get<std::string>() + "'");
  const Pose base = json_pose(j.at("base"));
  switch (*type) {
    case ModelType::Rigid:
      e.model.params = RigidParams{base};
      break;
    case ModelType::Prismatic:
      e.model.params = PrismaticParams{base, json_vec(j.at("axis_dir"))};
      break;
    case ModelType::Rotational:
      e.model.params =
          RotationalParams{json_vec(j.at("axis_dir")), json_vec(j.at("axis_point")), base};
      break;
  }
  e.model.k = j.at("k").get<int>();
  e.model.log_lik = j.at("log_lik").get<double>();
  e.model.configs = j.at("configs").get<std::vector<double>>();
  e.n = j.at("n").get<int>();
  for (const auto& [name, value] : j.at("bic_all").items()) {
    const auto t = parse_model_type(name);
    if (!t) throw FormatError("unknown type '" + name + "' in bic_all");
    e.bic_all[*t] = value.get<double>();
  }
  e.cost = j.at("cost").get<double>();
  e.lingual = j.value("lingual", false);
  return e;
}

json assignment_json(const Assignment& a) {
  json pairs = json::array();
  for (const auto& [noun, cluster] : a.pairs) pairs.push_back(json::array({noun, cluster}));
  return {{"pairs", pairs},
          {"unmatched_nouns", a.unmatched_nouns},
          {"unmatched_clusters", a.unmatched_clusters}};
}

Assignment json_assignment(const json& j) {
  Assignment a;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw FormatError("assignment pair must have 2 entries");
    a.pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  }
  a.unmatched_nouns = j.at("unmatched_nouns").get<std::vector<std::string>>();
  a.unmatched_clusters = j.at("unmatched_clusters").get<std::vector<std::string>>();
  return a;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

TrajectorySet parse_trajectories(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    TrajectorySet set;
    std::set<std::string> seen;
    for (const auto& c : doc.at("clusters")) {
      const auto id = c.at("id").get<std::string>();
      if (!seen.insert(id).second) throw FormatError("duplicate cluster id '" + id + "'");
      if (c.value("background", false)) {
        if (set.background) throw FormatError("more than one cluster flagged as background");
        set.background = id;
      }
      std::vector<TimedPose> samples;
      for (const auto& s : c.at("poses")) samples.push_back({s.at("t").get<double>(), json_pose(s)});
      set.clusters.emplace_back(id, std::move(samples));
    }
    return set;
  });
}

std::string serialize_trajectories(const TrajectorySet& set) {
  json clusters = json::array();
  for (const auto& traj : set.clusters) {
    json c;
    c["id"] = traj.id();
    if (set.background && *set.background == traj.id()) c["background"] = true;
    json poses = json::array();
    for (const auto& s : traj.samples()) {
      json p = pose_json(s.pose);
      p["t"] = s.t;
      poses.push_back(std::move(p));
    }
    c["poses"] = std::move(poses);
    clusters.push_back(std::move(c));
  }
  return json{{"clusters", clusters}}.dump(1) + "\n";
}

GraphFile parse_graph(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    GraphFile file;
    file.graph.background = doc.at("background").get<std::string>();
    file.graph.vertices = doc.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : doc.at("edges")) file.graph.edges.push_back(json_edge(e));
    if (doc.contains("assignment")) file.assignment = json_assignment(doc.at("assignment"));
    try {
      file.graph.validate();
    } catch (const Error& e) {
      throw FormatError(std::string("invalid graph: ") + e.what());
    }
    return file;
  });
}

std::string serialize_graph(const GraphFile& file) {
  json doc;
  doc["background"] = file.graph.background;
  doc["vertices"] = file.graph.vertices;
  json edges = json::array();
  for (const auto& e : file.graph.edges) edges.push_back(edge_json(e));
  doc["edges"] = std::move(edges);
  if (file.assignment) doc["assignment"] = assignment_json(*file.assignment);
  return doc.dump(1) + "\n";
}

Correspondence parse_correspondence(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw FormatError("correspondence must be a JSON object");
    return doc.get<Correspondence>();
  });
}

std::string serialize_report(const EvalReport& report) {
  json rows = json::array();
  for (const auto& r : report.per_demo) {
    json row = {{"id", r.id}, {"n_v", r.n_v}, {"n_star", r.n_star},
                {"hard", r.hard}, {"soft", r.soft}};
    row["e_param"] = r.e_param ? json(*r.e_param) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json doc = {{"K", report.demo_count()}, {"S_v", report.s_v}, {"S_h", report.s_h},
              {"S_s", report.s_s}, {"e_param_excluded", report.e_param_excluded}};
  doc["e_param"] = report.e_param ? json(*report.e_param) : json(nullptr);
  doc["per_demo"] = std::move(rows);
  return doc.dump(1) + "\n";
}

std::string format_report_table(const EvalReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %4s %4s %5s %5s %9s\n", "demo", "N_v", "N*", "hard",
                "soft", "e_param");
  out << line;
  for (const auto& r : report.per_demo) {
    std::string e = "-";
    if (r.e_param) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *r.e_param);
      e = buf;
    }
    std::snprintf(line, sizeof line, "%-24s %4d %4d %5s %5s %9s\n", r.id.c_str(), r.n_v,
                  r.n_star, r.hard ? "yes" : "no", r.soft ? "yes" : "no", e.c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "K=%d S_v=%.4f S_h=%.4f S_s=%.4f", report.demo_count(),
                report.s_v, report.s_h, report.s_s);
  out << line;
  if (report.e_param) {
    std::snprintf(line, sizeof line, " e_param=%.3f", *report.e_param);
    out << line;
  } else {
    out << " e_param=-";
  }
  out << " excluded=" << report.e_param_excluded << "\n";
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace multikin
