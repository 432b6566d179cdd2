// Batch verification driver.  Runs the requested structure checks for one
// (algebra, level, cutoff) configuration and emits a machine-readable report.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paraferm/coset.hpp"

using nlohmann::ordered_json;
using namespace paraferm;

namespace {

constexpr const char* kEngineVersion = "paraferm 0.1.0";

struct RunConfig {
  std::string algebra = "osp1";
  int n = 1;
  int k = 1;
  int cutoff = 4;
  int headroom = -1;   // default k+1
  std::vector<std::string> checks = {"all"};
  std::string out;
  std::string format = "json";
  int workers = 1;
};

ordered_json dims_json(const std::map<int, int>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [w, d] : m) j[std::to_string(w)] = d;
  return j;
}

ordered_json report_json(const RunConfig& cfg, coset::Engine* eng,
                         const std::vector<coset::CheckReport>& results,
                         const std::vector<std::string>& check_ids) {
  ordered_json rep;
  rep["schema"] = "paraferm-report/1";
  ordered_json cj;
  cj["algebra"] = eng ? eng->space().algebra().name() : cfg.algebra;
  cj["level"] = cfg.k;
  cj["cutoff"] = cfg.cutoff;
  cj["headroom"] = cfg.headroom;
  cj["checks"] = check_ids;
  rep["config"] = cj;
  rep["engine_version"] = kEngineVersion;

  if (eng && !check_ids.empty()) {
    const auto& im = eng->ideals();
    ordered_json dims;
    std::map<int, int> vdims;
    RootVec zero(eng->space().algebra().rank(), 0);
    for (int w = 0; w <= cfg.cutoff; ++w)
      vdims[w] = eng->space().block_dim(w, zero);
    dims["vacuum_charge0"] = dims_json(vdims);
    dims["commutant"] = dims_json(im.n_dims);
    dims["ideal_charge0"] = dims_json(im.j0_dims);
    dims["itilde"] = dims_json(im.itilde_dims);
    dims["parafermion"] = dims_json(im.k_dims);
    rep["dimensions"] = dims;
  }

  ordered_json checks = ordered_json::array();
  for (const auto& r : results) {
    ordered_json c;
    c["id"] = r.id;
    c["verdict"] = coset::verdict_str(r.verdict);
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      ordered_json rj;
      rj["w"] = row.w;
      rj["target"] = row.target;
      rj["achieved"] = row.achieved;
      if (!row.note.empty()) rj["note"] = row.note;
      rows.push_back(rj);
    }
    c["rows"] = rows;
    if (!r.detail.empty()) c["detail"] = r.detail;
    checks.push_back(c);
  }
  rep["checks"] = checks;

  // Timing and worker count live in their own section; golden comparisons
  // drop this key.
  ordered_json timing;
  timing["workers"] = cfg.workers;
  for (const auto& r : results) timing[r.id] = r.seconds;
  rep["timing"] = timing;
  return rep;
}

std::string report_csv(const std::vector<coset::CheckReport>& results) {
  std::ostringstream os;
  os << "check,weight,target,achieved,verdict,note\n";
  for (const auto& r : results)
    for (const auto& row : r.rows)
      os << r.id << ',' << row.w << ',' << row.target << ',' << row.achieved << ','
         << coset::verdict_str(r.verdict) << ",\"" << row.note << "\"\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"parafermion coset structure verifier"};
  app.add_option("--algebra", cfg.algebra, "osp<n> or sl2");
  app.add_option("--n", cfg.n, "rank parameter for osp(1|2n)");
  app.add_option("--k", cfg.k, "level (positive integer)");
  app.add_option("--cutoff", cfg.cutoff, "report cutoff W (>= 2)");
  app.add_option("--headroom", cfg.headroom, "extra working weights (default k+1)");
  app.add_option("--checks", cfg.checks, "check ids, or 'all'");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--workers", cfg.workers, "worker count (does not affect results)");
  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("PARAFERM_WORKERS")) cfg.workers = std::atoi(env);

  AlgebraPtr alg;
  try {
    if (cfg.algebra == "sl2") {
      alg = LieSuperalgebra::build_sl2();
    } else if (cfg.algebra.rfind("osp", 0) == 0) {
      if (cfg.algebra.size() > 3) cfg.n = std::stoi(cfg.algebra.substr(3));
      alg = LieSuperalgebra::build_osp(cfg.n);
    } else {
      std::cerr << "usage error: unknown algebra '" << cfg.algebra << "'\n";
      return 2;
    }
    if (cfg.k < 1 || cfg.cutoff < 2) {
      std::cerr << "usage error: need k >= 1 and cutoff >= 2\n";
      return 2;
    }
    if (cfg.headroom < 0) cfg.headroom = cfg.k + 1;
    if (cfg.format != "json" && cfg.format != "csv") {
      std::cerr << "usage error: format must be json or csv\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<std::string> check_ids;
  for (const auto& c : cfg.checks) {
    if (c == "all") {
      check_ids = coset::kAllChecks;
      break;
    }
    check_ids.push_back(c);
  }
  for (const auto& id : check_ids)
    if (std::find(coset::kAllChecks.begin(), coset::kAllChecks.end(), id) ==
        coset::kAllChecks.end()) {
      std::cerr << "usage error: unknown check '" << id << "'\n";
      return 2;
    }

  coset::Engine eng(alg, cfg.k, cfg.cutoff, cfg.headroom);
  std::vector<coset::CheckReport> results;
  bool failed = false;
  for (const auto& id : check_ids) {
    coset::CheckReport r = eng.verify(id);
    failed |= (r.verdict == coset::Verdict::Failed);
    std::cerr << id << ": " << coset::verdict_str(r.verdict) << " ("
              << r.seconds << "s)\n";
    results.push_back(std::move(r));
  }

  std::string payload;
  if (cfg.format == "json")
    payload = report_json(cfg, check_ids.empty() ? nullptr : &eng, results,
                          check_ids).dump(2) + "\n";
  else
    payload = report_csv(results);

  if (cfg.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 2;
    }
    f << payload;
  }
  return failed ? 1 : 0;
}
