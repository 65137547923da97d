#include "msstr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "msstr/problems.hpp"

namespace msstr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ProblemRef> full_catalog_refs(int dim) {
  std::vector<ProblemRef> refs;
  for (const auto& name : catalog()) refs.push_back({name, dim});
  return refs;
}

LabeledConfig mss_variant(std::string label, NormKind norm, InitKind init,
                          int memory, int window, int max_iter) {
  SolverConfig c = SolverConfig::mss_defaults();
  c.norm = norm;
  c.init = init;
  c.memory = memory;
  c.window = window;
  c.max_iter = max_iter;
  c.label = label;
  return {std::move(label), c};
}

LabeledConfig sr1_variant(std::string label, int max_iter) {
  SolverConfig c = SolverConfig::sr1_defaults();
  c.max_iter = max_iter;
  c.label = label;
  return {std::move(label), c};
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"exp-ia", "exp-ib",  "exp-ic",  "exp-ii",
          "exp-iiia", "exp-iiib", "exp-iiic", "exp-iiid"};
}

ExperimentSpec preset_experiment(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  spec.problems = full_catalog_refs(1000);
  const int short_cap = 5000;
  const int long_cap = 50000;
  if (name == "exp-ia") {
    spec.solvers = {
        mss_variant("SC-L2", NormKind::sc_l2, InitKind::scalar, 3, 5, short_cap),
        mss_variant("SC-L2-D", NormKind::sc_l2, InitKind::dense, 3, 5, short_cap)};
  } else if (name == "exp-ib") {
    spec.solvers = {
        mss_variant("SC-INF", NormKind::sc_inf, InitKind::scalar, 3, 5, short_cap),
        mss_variant("SC-INF-D", NormKind::sc_inf, InitKind::dense, 3, 5, short_cap)};
  } else if (name == "exp-ic") {
    spec.solvers = {
        mss_variant("SC-L2", NormKind::sc_l2, InitKind::scalar, 3, 5, short_cap),
        mss_variant("SC-INF-D", NormKind::sc_inf, InitKind::dense, 3, 5, short_cap)};
  } else if (name == "exp-ii") {
    spec.solvers = {
        mss_variant("SC-INF-D", NormKind::sc_inf, InitKind::dense, 3, 5, short_cap),
        mss_variant("TRCG", NormKind::trcg_euclidean, InitKind::scalar, 3, 5,
                    short_cap)};
  } else if (name == "exp-iiia" || name == "exp-iiib" || name == "exp-iiic" ||
             name == "exp-iiid") {
    NormKind norm = (name == "exp-iiia" || name == "exp-iiib")
                        ? NormKind::sc_inf
                        : NormKind::sc_l2;
    InitKind init = (name == "exp-iiia" || name == "exp-iiic")
                        ? InitKind::dense
                        : InitKind::scalar;
    const std::string tag =
        std::string(norm == NormKind::sc_inf ? "SC-INF" : "SC-L2") +
        (init == InitKind::dense ? "-D" : "");
    spec.solvers = {sr1_variant("SR1", long_cap),
                    mss_variant(tag + "-M3", norm, init, 3, 5, long_cap),
                    mss_variant(tag + "-M5", norm, init, 5, 7, long_cap)};
  } else {
    throw std::out_of_range("unknown experiment preset: " + name);
  }
  return spec;
}

std::vector<RunRecord> run_experiment(
    const ExperimentSpec& spec, int jobs,
    const std::function<void(const RunRecord&)>& progress) {
  const int np = static_cast<int>(spec.problems.size());
  const int ns = static_cast<int>(spec.solvers.size());
  const int cells = np * ns;
  std::vector<RunRecord> results(cells);
  std::atomic<int> next{0};
  std::mutex progress_mu;

  auto worker = [&] {
    while (true) {
      const int cell = next.fetch_add(1);
      if (cell >= cells) break;
      const ProblemRef& pr = spec.problems[cell / ns];
      const LabeledConfig& lc = spec.solvers[cell % ns];
      RunRecord rec;
      try {
        Problem prob = make_problem(pr.name, pr.dim);
        SolverConfig cfg = lc.config;
        cfg.label = lc.label;
        rec = minimize(prob, prob.x0, cfg).record;
      } catch (const std::exception&) {
        rec.problem_name = pr.name;
        rec.solver_name = lc.label;
        rec.converged = false;
        rec.final_f = kInf;
        rec.final_gnorm_inf = kInf;
      }
      rec.solver_name = lc.label;
      results[cell] = rec;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(results[cell]);
      }
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

namespace {

double metric_value(const RunRecord& r, Metric metric) {
  if (!r.converged) return kInf;
  if (metric == Metric::f_evals) return static_cast<double>(r.f_evals);
  return std::max(r.wall_time, 1e-9);
}

}  // namespace

RatioTable ratio_table(const std::vector<RunRecord>& records, Metric metric) {
  RatioTable table;
  // Collect labels and problems in first-appearance order.
  for (const auto& r : records) {
    if (std::find(table.labels.begin(), table.labels.end(), r.solver_name) ==
        table.labels.end())
      table.labels.push_back(r.solver_name);
    if (std::find(table.problems.begin(), table.problems.end(),
                  r.problem_name) == table.problems.end())
      table.problems.push_back(r.problem_name);
  }
  const int np = static_cast<int>(table.problems.size());
  const int ns = static_cast<int>(table.labels.size());
  std::vector<std::vector<double>> t(np, std::vector<double>(ns, kInf));
  for (const auto& r : records) {
    const auto pi = std::find(table.problems.begin(), table.problems.end(),
                              r.problem_name) -
                    table.problems.begin();
    const auto si =
        std::find(table.labels.begin(), table.labels.end(), r.solver_name) -
        table.labels.begin();
    t[pi][si] = metric_value(r, metric);
  }
  table.ratios.assign(np, std::vector<double>(ns, kInf));
  for (int p = 0; p < np; ++p) {
    for (int s = 0; s < ns; ++s) {
      double best_other = kInf;
      for (int i = 0; i < ns; ++i) {
        if (i != s) best_other = std::min(best_other, t[p][i]);
      }
      if (std::isinf(t[p][s])) {
        table.ratios[p][s] = kInf;
      } else if (std::isinf(best_other)) {
        table.ratios[p][s] = 0.0;
      } else {
        table.ratios[p][s] = t[p][s] / best_other;
      }
    }
  }
  return table;
}

ProfileData extended_profile(const std::vector<RunRecord>& records,
                             Metric metric) {
  const RatioTable table = ratio_table(records, metric);
  ProfileData data;
  data.labels = table.labels;
  // log2-spaced grid on [2^-6, 32], 8 points per octave; hits -6..5 exactly,
  // so tau = 1, 2 and 32 are grid points.
  for (int k = -48; k <= 40; ++k) {
    data.tau.push_back(std::exp2(k / 8.0));
  }
  const int np = static_cast<int>(table.problems.size());
  const int ns = static_cast<int>(table.labels.size());
  data.rho.assign(ns, std::vector<double>(data.tau.size(), 0.0));
  for (int s = 0; s < ns; ++s) {
    for (size_t k = 0; k < data.tau.size(); ++k) {
      int count = 0;
      for (int p = 0; p < np; ++p) {
        if (table.ratios[p][s] <= data.tau[k]) ++count;
      }
      data.rho[s][k] = np > 0 ? static_cast<double>(count) / np : 0.0;
    }
  }
  return data;
}

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& recs) {
  out << "problem,solver,converged,iters,fevals,gevals,final_f,final_gnorm,"
         "seconds\n";
  for (const auto& r : recs) {
    out << r.problem_name << ',' << r.solver_name << ','
        << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << r.f_evals
        << ',' << r.g_evals << ',' << fmt_double(r.final_f) << ','
        << fmt_double(r.final_gnorm_inf) << ',' << fmt_double(r.wall_time)
        << '\n';
  }
}

std::vector<RunRecord> read_results_csv(std::istream& in) {
  std::vector<RunRecord> recs;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 9)
      throw std::runtime_error("malformed results row: " + line);
    RunRecord r;
    r.problem_name = fields[0];
    r.solver_name = fields[1];
    r.converged = fields[2] == "1";
    r.iterations = std::stoi(fields[3]);
    r.f_evals = std::stoi(fields[4]);
    r.g_evals = std::stoi(fields[5]);
    r.final_f = parse_double(fields[6]);
    r.final_gnorm_inf = parse_double(fields[7]);
    r.wall_time = parse_double(fields[8]);
    recs.push_back(std::move(r));
  }
  return recs;
}

void write_profile_csv(std::ostream& out, const ProfileData& data) {
  out << "tau";
  for (const auto& label : data.labels) out << ',' << label;
  out << '\n';
  for (size_t k = 0; k < data.tau.size(); ++k) {
    out << fmt_double(data.tau[k]);
    for (size_t s = 0; s < data.labels.size(); ++s)
      out << ',' << fmt_double(data.rho[s][k]);
    out << '\n';
  }
}

ProfileData read_profile_csv(std::istream& in) {
  ProfileData data;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty profile csv");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "tau")
    throw std::runtime_error("bad profile csv header");
  data.labels.assign(header.begin() + 1, header.end());
  data.rho.assign(data.labels.size(), {});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("malformed profile row: " + line);
    data.tau.push_back(parse_double(fields[0]));
    for (size_t s = 0; s < data.labels.size(); ++s)
      data.rho[s].push_back(parse_double(fields[s + 1]));
  }
  return data;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b"};

}  // namespace

void write_profile_svg(std::ostream& out, const ProfileData& data,
                       const std::string& title) {
  const int width = 640, height = 480;
  const int ml = 60, mr = 20, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double lx_min = std::log2(data.tau.front());
  const double lx_max = std::log2(data.tau.back());
  auto sx = [&](double tau) {
    return ml + pw * (std::log2(tau) - lx_min) / (lx_max - lx_min);
  };
  auto sy = [&](double rho) { return mt + ph * (1.0 - rho); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title
        << "</text>\n";
  }
  // axes box
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  // x ticks at powers of two
  for (int e = static_cast<int>(std::ceil(lx_min));
       e <= static_cast<int>(std::floor(lx_max)); ++e) {
    const double x = ml + pw * (e - lx_min) / (lx_max - lx_min);
    out << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x
        << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">2^"
        << e << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">ratio bound</text>\n";
  // y ticks
  for (int t = 0; t <= 4; ++t) {
    const double rho = t / 4.0;
    const double y = sy(rho);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << rho << "</text>\n";
  }
  out << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << mt + ph / 2 << ")\">fraction of problems</text>\n";
  // reference line at tau = 1
  if (lx_min < 0.0 && lx_max > 0.0) {
    out << "<line x1=\"" << sx(1.0) << "\" y1=\"" << mt << "\" x2=\""
        << sx(1.0) << "\" y2=\"" << mt + ph
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  // step curves
  for (size_t s = 0; s < data.labels.size(); ++s) {
    const char* color = kPalette[s % 6];
    out << "<path fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" d=\"";
    for (size_t k = 0; k < data.tau.size(); ++k) {
      const double x = sx(data.tau[k]);
      const double y = sy(data.rho[s][k]);
      if (k == 0) {
        out << 'M' << x << ' ' << y;
      } else {
        // horizontal-then-vertical step shape
        out << " H" << x << " V" << y;
      }
    }
    out << "\"/>\n";
    // legend
    const double lyy = mt + 14 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << ml + 10 << "\" y1=\"" << lyy << "\" x2=\""
        << ml + 34 << "\" y2=\"" << lyy << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    out << "<text x=\"" << ml + 40 << "\" y=\"" << lyy + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << data.labels[s]
        << "</text>\n";
  }
  out << "</svg>\n";
}

void write_profile_table(std::ostream& out, const ProfileData& data) {
  auto rho_at = [&](size_t s, double tau) {
    double best = 0.0;
    for (size_t k = 0; k < data.tau.size(); ++k) {
      if (data.tau[k] <= tau * (1.0 + 1e-12)) best = data.rho[s][k];
    }
    return best;
  };
  out << "solver";
  for (double tau : {1.0, 2.0, 32.0}) out << "\trho(" << tau << ")";
  out << '\n';
  for (size_t s = 0; s < data.labels.size(); ++s) {
    out << data.labels[s];
    for (double tau : {1.0, 2.0, 32.0}) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", rho_at(s, tau));
      out << '\t' << buf;
    }
    out << '\n';
  }
}

}  // namespace msstr
