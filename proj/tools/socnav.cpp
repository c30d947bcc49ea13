// Copyright 2026 The socnav Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy of
// the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations under
// the License.

// Command-line front end over the socnav C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "socnav/socnav.h"

namespace {

using nlohmann::json;

struct Failure {
  std::string message;
};

void check(socnav_status s, const std::string& what) {
  if (s != SOCNAV_OK)
    throw Failure{what + ": " + socnav_status_string(s) + ": " + socnav_last_error()};
}

std::string take(char* text) {
  std::string out = text ? text : "";
  socnav_free(text);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{"cannot write " + path};
}

class EngineHandle {
 public:
  EngineHandle(const std::string& community, const std::string& config_path) {
    const std::string config = config_path.empty() ? "" : read_text(config_path);
    check(socnav_engine_create_from_file(community.c_str(),
                                         config_path.empty() ? nullptr : config.c_str(),
                                         &engine_),
          "loading " + community);
  }
  ~EngineHandle() { socnav_engine_destroy(engine_); }
  EngineHandle(const EngineHandle&) = delete;
  EngineHandle& operator=(const EngineHandle&) = delete;

  json call(const char* method, const char* path, const json& body) {
    int status = 0;
    char* out = nullptr;
    const std::string text = body.dump();
    check(socnav_engine_call(engine_, method, path, text.c_str(), &status, &out), path);
    json reply = json::parse(take(out));
    if (status != 200 && status != 201)
      throw Failure{reply["error"]["code"].get<std::string>() + ": " +
                    reply["error"]["message"].get<std::string>()};
    return reply;
  }

  socnav_engine* get() { return engine_; }

 private:
  socnav_engine* engine_ = nullptr;
};

struct ContextFlags {
  std::optional<unsigned> origin;
  std::optional<std::string> proxy_gender;
  std::optional<int> proxy_grade;
  std::vector<std::string> proxy_interests;
  std::string category;
  std::string urgency = "whenever";
  std::vector<std::string> languages;
  std::optional<double> beta;

  void add_to(CLI::App* app, bool category_required) {
    app->add_option("--origin", origin, "Member id issuing the query");
    app->add_option("--proxy-gender", proxy_gender, "Non-member user: F, M or unspecified");
    app->add_option("--proxy-grade", proxy_grade, "Non-member user: grade");
    app->add_option("--proxy-interest", proxy_interests, "Non-member user: category ids");
    auto* c = app->add_option("--category", category, "Category id");
    if (category_required) c->required();
    app->add_option("--urgency", urgency, "immediate, today or whenever")
        ->check(CLI::IsMember({"immediate", "today", "whenever"}));
    app->add_option("--language", languages, "Languages the user speaks");
    app->add_option("--beta", beta, "Softmax sharpness override");
  }

  bool given() const { return origin || proxy_gender || proxy_grade || !proxy_interests.empty(); }

  json to_json() const {
    json user;
    if (origin) {
      user["member"] = *origin;
    } else {
      json proxy = json::object();
      if (proxy_gender) proxy["gender"] = *proxy_gender;
      if (proxy_grade) proxy["grade"] = *proxy_grade;
      if (!languages.empty()) proxy["languages"] = languages;
      if (!proxy_interests.empty()) proxy["interests"] = proxy_interests;
      user["proxy"] = proxy;
    }
    json ctx{{"user", user}, {"category", category}, {"urgency", urgency}};
    if (!languages.empty()) ctx["languages"] = languages;
    if (beta) ctx["beta"] = *beta;
    return ctx;
  }
};

std::vector<double> parse_triple(const std::string& text, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{flag + ": expected x,y,z numbers, got '" + text + "'"};
    }
  }
  if (v.size() != 3) throw Failure{flag + ": expected three comma-separated numbers"};
  return v;
}

void print_table(const json& rec) {
  const auto& top = rec["top3"];
  std::cout << "query " << rec["query_id"].get<std::string>() << "  origin "
            << rec["origin"].get<unsigned>() << (rec["origin_is_proxy"].get<bool>() ? " (proxy)" : "")
            << "  category " << rec["category"].get<std::string>() << "  urgency "
            << rec["urgency"].get<std::string>() << "\n";
  if (top.empty()) {
    std::cout << "no adviser found\n";
    return;
  }
  std::printf("%-5s %-8s %10s %10s %10s %8s\n", "rank", "member", "score", "w+", "w-",
              "support");
  const auto& ranked = rec["ranked"];
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& e = ranked[i];
    std::printf("%-5s %-8u %10.6f %10.6f %10.6f %8zu\n",
                i < top.size() ? std::to_string(i + 1).c_str() : "-",
                e["subject"].get<unsigned>(), e["score"].get<double>(),
                e["positive_weight"].get<double>(), e["negative_weight"].get<double>(),
                e["support"].size());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social navigation engine"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic community document");
  std::uint64_t seed = 1;
  std::size_t members = 43, categories = 19;
  std::string model = "small_world", gen_out, spec_path;
  std::vector<std::string> experts;
  bool plant_all = false, all_feasible = false;
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--members", members, "Member count");
  gen->add_option("--categories", categories, "Category count");
  gen->add_option("--model", model, "small_world, random or clustered")
      ->check(CLI::IsMember({"small_world", "random", "clustered"}));
  gen->add_option("--expert", experts, "Planted expert as category=member");
  gen->add_flag("--plant-all", plant_all, "Plant a random expert in every category");
  gen->add_flag("--all-feasible", all_feasible, "Make every member reachable on all channels");
  gen->add_option("--spec", spec_path, "Scenario spec file; flags override it");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // query
  auto* query = app.add_subcommand("query", "Recommend advisers for a category");
  std::string community, config_path, query_id = "cli";
  ContextFlags qctx;
  bool as_json = false;
  query->add_option("community", community, "Community document")->required();
  qctx.add_to(query, true);
  query->add_option("--query-id", query_id, "Trace id");
  query->add_option("--config", config_path, "Engine config file");
  query->add_flag("--json", as_json, "Print the JSON response");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Drive the probe along a HIP trajectory");
  std::string trajectory, sim_out;
  ContextFlags sctx;
  sim->add_option("community", community, "Community document")->required();
  sim->add_option("trajectory", trajectory, "CSV of t,x,y,z")->required();
  sctx.add_to(sim, false);
  sim->add_option("--config", config_path, "Engine config file");
  sim->add_option("-o,--out", sim_out, "Output CSV (default stdout)");

  // field
  auto* field = app.add_subcommand("field", "Sample the force field on a grid");
  std::string grid_min = "0,0,0", grid_max = "20,12,3", hip, field_out;
  std::size_t nx = 50, ny = 30, nz = 1;
  ContextFlags fctx;
  field->add_option("community", community, "Community document")->required();
  fctx.add_to(field, false);
  field->add_option("--min", grid_min, "Grid corner x,y,z");
  field->add_option("--max", grid_max, "Grid corner x,y,z");
  field->add_option("--nx", nx, "Samples along x");
  field->add_option("--ny", ny, "Samples along y");
  field->add_option("--nz", nz, "Samples along z");
  field->add_option("--hip", hip, "Fix the pole as selected from this HIP x,y,z");
  field->add_option("--config", config_path, "Engine config file");
  field->add_option("-o,--out", field_out, "Output file (default stdout)");

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  std::string host;
  std::optional<int> port;
  serve->add_option("community", community, "Community document")->required();
  serve->add_option("--config", config_path, "Engine config file");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 picks one)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      json spec = spec_path.empty() ? json::object() : json::parse(read_text(spec_path));
      spec["seed"] = seed;
      if (gen->count("--members")) spec["member_count"] = members;
      if (gen->count("--categories")) spec["category_count"] = categories;
      if (gen->count("--model")) spec["model"] = model;
      if (plant_all) spec["plant_every_category"] = true;
      if (all_feasible) spec["all_feasible"] = true;
      for (const auto& e : experts) {
        const auto eq = e.find('=');
        if (eq == std::string::npos) throw Failure{"--expert: expected category=member"};
        try {
          spec["planted_experts"][e.substr(0, eq)] = std::stoul(e.substr(eq + 1));
        } catch (const std::exception&) {
          throw Failure{"--expert: bad member id in '" + e + "'"};
        }
      }
      char* doc = nullptr;
      check(socnav_generate(spec.dump().c_str(), &doc), "gen");
      write_text(gen_out, take(doc));
    } else if (query->parsed()) {
      if (!qctx.given()) throw Failure{"query: give --origin or proxy flags"};
      EngineHandle engine(community, config_path);
      const json rec = engine.call("POST", "/v1/recommendations",
                                   json{{"query_id", query_id}, {"context", qctx.to_json()}});
      if (as_json)
        std::cout << rec.dump(2) << "\n";
      else
        print_table(rec);
    } else if (sim->parsed()) {
      EngineHandle engine(community, config_path);
      const std::string ctx = sctx.given() ? sctx.to_json().dump() : "";
      if (sctx.given() && sctx.category.empty())
        throw Failure{"simulate: --category is required with a user"};
      char* csv = nullptr;
      const std::string traj = read_text(trajectory);
      check(socnav_engine_simulate(engine.get(), sctx.given() ? ctx.c_str() : nullptr,
                                   traj.c_str(), &csv),
            "simulate");
      write_text(sim_out, take(csv));
    } else if (field->parsed()) {
      EngineHandle engine(community, config_path);
      json body{{"grid",
                 {{"min", parse_triple(grid_min, "--min")},
                  {"max", parse_triple(grid_max, "--max")},
                  {"counts", {nx, ny, nz}}}}};
      if (fctx.given()) {
        if (fctx.category.empty()) throw Failure{"field: --category is required with a user"};
        body["context"] = fctx.to_json();
      }
      if (!hip.empty()) body["hip"] = parse_triple(hip, "--hip");
      write_text(field_out, engine.call("POST", "/v1/field", body).dump(2) + "\n");
    } else if (serve->parsed()) {
      EngineHandle engine(community, config_path);
      const json cfg = engine.call("GET", "/v1/config", json::object());
      const std::string h = host.empty() ? cfg["listen_host"].get<std::string>() : host;
      const int p = port ? *port : cfg["listen_port"].get<int>();
      int bound = 0;
      check(socnav_engine_bind(engine.get(), h.c_str(), p, &bound), "serve");
      std::cout << "listening on " << h << ":" << bound << std::endl;
      check(socnav_engine_listen(engine.get()), "serve");
    }
  } catch (const Failure& f) {
    std::cerr << "socnav: " << f.message << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "socnav: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
