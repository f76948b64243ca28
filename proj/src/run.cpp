#include "icc/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

#include "json.hpp"

#include "icc/baselines.hpp"
#include "icc/sweep.hpp"

namespace icc {
namespace {

using nlohmann::json;

std::string fmt1(const char* spec, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, a);
  return buf;
}

std::string fmt2(const char* spec, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, spec, a, b);
  return buf;
}

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ConfigError(path, msg);
}

void require_keys(const json& j, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) known = true;
    }
    if (!known) bad(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

void parse_channel(const json& j, const std::string& path, ChannelParams& out) {
  if (!j.is_object()) bad(path, "expected an object");
  require_keys(j, path, {"P1", "P2", "a12", "a21", "K"});
  if (j.contains("P1")) out.P1 = number_at(j["P1"], path + ".P1");
  if (j.contains("P2")) out.P2 = number_at(j["P2"], path + ".P2");
  if (j.contains("a12")) out.a12 = number_at(j["a12"], path + ".a12");
  if (j.contains("a21")) out.a21 = number_at(j["a21"], path + ".a21");
  if (j.contains("K")) out.K = number_at(j["K"], path + ".K");
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

void parse_sweep(const json& j, const std::string& path, SweepConfig& out) {
  if (!j.is_object()) bad(path, "expected an object");
  require_keys(j, path, {"resolution", "lambda_multipliers", "sides"});
  if (j.contains("resolution")) {
    if (!j["resolution"].is_number_integer()) bad(path + ".resolution", "expected an integer");
    out.resolution = j["resolution"].get<int>();
  }
  if (j.contains("lambda_multipliers")) {
    const json& arr = j["lambda_multipliers"];
    if (!arr.is_array()) bad(path + ".lambda_multipliers", "expected an array");
    out.lambda_multipliers.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.lambda_multipliers.push_back(
          number_at(arr[i], path + ".lambda_multipliers[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("sides")) {
    if (!j["sides"].is_string()) bad(path + ".sides", "expected a string");
    const std::string s = j["sides"].get<std::string>();
    if (s == "both")
      out.sides = SweepConfig::Sides::Both;
    else if (s == "z1")
      out.sides = SweepConfig::Sides::Z1Only;
    else if (s == "z2")
      out.sides = SweepConfig::Sides::Z2Only;
    else
      bad(path + ".sides", "expected one of both, z1, z2");
  }
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

void validate_k_list(const std::vector<double>& ks) {
  if (ks.empty()) bad("k_list", "must not be empty");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ks[i] >= 0.0) || !std::isfinite(ks[i]))
      bad("k_list[" + std::to_string(i) + "]", "expected a finite gain >= 0");
    if (i > 0 && !(ks[i] > ks[i - 1]))
      bad("k_list[" + std::to_string(i) + "]", "gains must be strictly ascending");
  }
}

// K value as it appears in file names: region_K4.csv, region_K0.5.csv.
std::string k_label(double k) { return fmt1("%g", k); }

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open " + file.string());
  out << content;
  out.flush();
  if (!out) throw IoError("cannot write " + file.string());
}

ReportCheck containment_check(const std::string& inner_name, const Polygon2D& inner,
                              const std::string& outer_name, const Polygon2D& outer) {
  ReportCheck c;
  c.name = inner_name + "_in_" + outer_name;
  c.tolerance = 1e-6;
  c.verdict = contains(outer, inner, c.tolerance) ? Verdict::Pass : Verdict::Fail;
  return c;
}

ReportCheck slope_check(const SweepAudit& audit) {
  ReportCheck c;
  c.name = "slope_audit";
  c.tolerance = tol::kSlope;
  c.verdict = audit.slope_violations == 0 ? Verdict::Pass : Verdict::Fail;
  c.detail = std::to_string(audit.slope_violations) + " violations in " +
             std::to_string(audit.polygons) + " polygons";
  return c;
}

ReportCheck relay_check(const ChannelParams& params, RelayRole role) {
  const RelayCapacity cap = relay_capacity(params, role);
  ReportCheck c;
  c.name = role == RelayRole::User2Relays ? "relay_r1_axis" : "relay_r2_axis";
  c.verdict = cap.degradedness_established ? Verdict::Pass : Verdict::Skipped;
  c.detail = fmt1("capacity=%.6f bits", cap.bits);
  if (!cap.degradedness_established) c.detail += " (conference gain below 1)";
  return c;
}

ReportCheck intercept_check(const char* name, double swept, double relay) {
  ReportCheck c;
  c.name = name;
  c.tolerance = 1e-2;
  c.verdict = std::abs(swept - relay) <= c.tolerance ? Verdict::Pass : Verdict::Fail;
  c.detail = fmt2("sweep=%.6f relay=%.6f", swept, relay);
  return c;
}

void merge_audit(SweepAudit& into, const SweepAudit& part) {
  into.polygons += part.polygons;
  into.empty_polygons += part.empty_polygons;
  into.slope_violations += part.slope_violations;
  if (part.best_r1.value > into.best_r1.value) into.best_r1 = part.best_r1;
  if (part.best_r2.value > into.best_r2.value) into.best_r2 = part.best_r2;
}

}  // namespace

RunMode parse_mode(const std::string& word) {
  if (word == "region") return RunMode::Region;
  if (word == "hk") return RunMode::Hk;
  if (word == "gvbc") return RunMode::Gvbc;
  if (word == "relay") return RunMode::Relay;
  if (word == "ideal") return RunMode::Ideal;
  if (word == "compare") return RunMode::Compare;
  bad("mode", "expected one of region, hk, gvbc, relay, ideal, compare");
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", e.what());
  }
  if (!j.is_object()) bad("", "top level must be an object");
  require_keys(j, "", {"channel", "mode", "sweep", "k_list", "out", "plot"});

  RunConfig cfg;
  if (j.contains("channel")) parse_channel(j["channel"], "channel", cfg.channel);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) bad("mode", "expected a string");
    cfg.mode = parse_mode(j["mode"].get<std::string>());
  }
  if (j.contains("sweep")) parse_sweep(j["sweep"], "sweep", cfg.sweep);
  if (j.contains("k_list")) {
    if (!j["k_list"].is_array()) bad("k_list", "expected an array");
    cfg.k_list.clear();
    for (std::size_t i = 0; i < j["k_list"].size(); ++i) {
      cfg.k_list.push_back(number_at(j["k_list"][i], "k_list[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) bad("out", "expected a string");
    cfg.out_dir = j["out"].get<std::string>();
  }
  if (j.contains("plot")) {
    if (!j["plot"].is_boolean()) bad("plot", "expected a boolean");
    cfg.plot = j["plot"].get<bool>();
  }
  validate_k_list(cfg.k_list);
  return cfg;
}

std::string execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  try {
    config.channel.validate();
    config.sweep.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(config.mode == RunMode::Relay ? "channel" : "channel/sweep", e.what());
  }
  validate_k_list(config.k_list);

  std::vector<RegionSeries> regions;
  std::vector<ReportCheck> checks;
  SweepAudit audit;

  switch (config.mode) {
    case RunMode::Region: {
      Region2D r = sweep_region(config.channel, config.sweep, &audit);
      regions.push_back({"region_K" + k_label(config.channel.K), r.hull});
      checks.push_back(slope_check(audit));
      break;
    }
    case RunMode::Hk: {
      regions.push_back({"hk", hk_region(config.channel, config.sweep.resolution).hull});
      checks.push_back({"slope_audit", Verdict::Skipped, tol::kSlope,
                        "baseline region, not produced by the sweep"});
      break;
    }
    case RunMode::Gvbc: {
      regions.push_back({"gvbc", gvbc_region(config.channel, config.sweep.resolution).hull});
      checks.push_back({"slope_audit", Verdict::Skipped, tol::kSlope,
                        "baseline region, not produced by the sweep"});
      break;
    }
    case RunMode::Ideal: {
      Region2D r = ideal_conferencing_region(config.channel, config.sweep, &audit);
      regions.push_back({"ideal", r.hull});
      checks.push_back(slope_check(audit));
      break;
    }
    case RunMode::Relay: {
      checks.push_back(relay_check(config.channel, RelayRole::User2Relays));
      checks.push_back(relay_check(config.channel, RelayRole::User1Relays));
      break;
    }
    case RunMode::Compare: {
      regions.push_back({"hk", hk_region(config.channel, config.sweep.resolution).hull});
      SweepAudit last_audit;
      ChannelParams last_params = config.channel;
      for (double k : config.k_list) {
        ChannelParams p = config.channel;
        p.K = k;
        SweepAudit part;
        Region2D r = sweep_region(p, config.sweep, &part);
        regions.push_back({"region_K" + k_label(k), r.hull});
        merge_audit(audit, part);
        last_audit = part;
        last_params = p;
      }
      regions.push_back({"gvbc", gvbc_region(config.channel, config.sweep.resolution).hull});

      for (std::size_t i = 0; i + 1 < regions.size(); ++i) {
        checks.push_back(containment_check(regions[i].name, regions[i].hull,
                                           regions[i + 1].name, regions[i + 1].hull));
      }
      const AxisIntercepts swept = polished_intercepts(last_params, last_audit);
      checks.push_back(intercept_check(
          "r1_intercept_vs_relay", swept.r1_max,
          relay_capacity(last_params, RelayRole::User2Relays).bits));
      checks.push_back(intercept_check(
          "r2_intercept_vs_relay", swept.r2_max,
          relay_capacity(last_params, RelayRole::User1Relays).bits));
      checks.push_back(slope_check(audit));
      break;
    }
  }

  namespace fs = std::filesystem;
  const fs::path out_dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  for (const RegionSeries& r : regions) {
    write_file(out_dir / (r.name + ".csv"), region_csv(r.hull));
  }
  if (config.plot && !regions.empty()) {
    write_file(out_dir / "overlay.svg", overlay_svg(regions));
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string report = run_report(regions, checks, seconds);
  write_file(out_dir / "report.txt", report);
  return report;
}

int execute_for_exit_code(const RunConfig& config) {
  try {
    std::fputs(execute(config).c_str(), stdout);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: config: %s: %s\n",
                 e.field.empty() ? "<document>" : e.field.c_str(), e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: io: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: compute: %s\n", e.what());
    return 3;
  }
}

}  // namespace icc
