#include "config.hpp"

#include <fstream>
#include <set>

#include "lowrank/errors.hpp"

namespace lowrank::runner {
namespace {

using nlohmann::json;

// Reads typed fields from one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    try {
      out = doc_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  bool has(const char* key) {
    seen_.insert(key);
    return doc_.contains(key);
  }

  Section child(const char* key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Section(doc_.contains(key) ? doc_.at(key) : empty, path_ + "." + key);
  }

  void finish() const {
    for (const auto& item : doc_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(path_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

SweepSchedule parse_schedule(const std::string& s) {
  if (s == "jacobi") return SweepSchedule::Jacobi;
  if (s == "sequential") return SweepSchedule::Sequential;
  throw ConfigError("solver.implicit.schedule: expected 'jacobi' or 'sequential', got '" + s + "'");
}

TensorFormat parse_format(const std::string& s) {
  if (s == "ht") return TensorFormat::HT;
  if (s == "cp") return TensorFormat::CP;
  throw ConfigError("solver.explicit.format: expected 'ht' or 'cp', got '" + s + "'");
}

void read_bgk(Section s, BGKSpec& b) {
  s.read("temperature", b.temperature);
  s.read("number_density", b.number_density);
  s.read("gas_constant", b.gas_constant);
  s.read("tau_r", b.tau_r);
  s.read("b_x", b.b_x);
  s.read("b_v", b.b_v);
  s.read("modes", b.modes);
  s.read("rho", b.rho);
  s.finish();
}

void read_advection(Section s, AdvectionSection& a) {
  std::vector<std::vector<double>> c;
  if (s.has("c")) {
    s.read("c", c);
    const auto n = static_cast<Eigen::Index>(c.size());
    a.spec.c.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      require(static_cast<Eigen::Index>(c[i].size()) == n, "advection.c: matrix must be square");
      for (Eigen::Index j = 0; j < n; ++j) a.spec.c(i, j) = c[i][j];
    }
  }
  s.read("half_width", a.spec.half_width);
  s.read("modes", a.spec.modes);
  s.read("probe", a.probe);
  s.read("sample_every", a.sample_every);
  s.finish();
}

void read_implicit(Section s, ExperimentConfig& c) {
  s.read("rank", c.rank);
  s.read("dt", c.bgk.dt);
  s.read("steps", c.bgk.n_iter);
  s.read("eps_tol", c.implicit.eps_tol);
  s.read("max_sweeps", c.implicit.max_sweeps);
  s.read("delta_beta", c.implicit.delta_beta);
  s.read("lsqr_tol", c.implicit.lsqr_tol);
  s.read("lsqr_maxit", c.implicit.lsqr_maxit);
  s.read("warm_start_perturbation", c.implicit.warm_start_perturbation);
  std::string schedule = "jacobi";
  s.read("schedule", schedule);
  c.implicit.schedule = parse_schedule(schedule);
  s.finish();
  c.bgk.eps_tol = c.implicit.eps_tol;
}

void read_explicit(Section s, ExperimentConfig& c) {
  s.read("dt", c.explicit_solver.dt);
  s.read("steps", c.explicit_steps);
  s.read("r_max", c.explicit_solver.r_max);
  s.read("eps_rank", c.explicit_solver.eps_rank);
  std::string format = "ht";
  s.read("format", format);
  c.format = parse_format(format);
  Section als = s.child("als");
  als.read("max_sweeps", c.explicit_solver.als.max_sweeps);
  als.read("change_tol", c.explicit_solver.als.change_tol);
  als.read("regularization", c.explicit_solver.als.regularization);
  als.finish();
  s.finish();
}

void validate(const ExperimentConfig& c) {
  require(c.workers >= 1, "workers must be at least 1");
  require(!c.output_dir.empty(), "output_dir must not be empty");
  validate(c.bgk);
  require(c.rank >= 1, "solver.implicit.rank must be at least 1");
  validate(c.implicit);
  validate(c.explicit_solver);
  require(c.explicit_steps >= 1, "solver.explicit.steps must be at least 1");
  require(c.relax.epsilon >= 0.0 && c.relax.epsilon < 1.0, "relax.epsilon must lie in [0, 1)");
  require(c.relax.duration >= 0.0, "relax.duration must be non-negative");
  require(c.relax.sample_every >= 1, "relax.sample_every must be at least 1");
  require(c.advection.sample_every >= 1, "advection.sample_every must be at least 1");

  switch (c.kind) {
    case ExperimentKind::AdvectionError:
      validate(c.advection.spec);
      break;
    case ExperimentKind::MaxwellianApprox:
      require(!c.sweep.modes.empty() && !c.sweep.ratios.empty(), "sweep.modes and sweep.ratios must be non-empty");
      for (int q : c.sweep.modes) require(q >= 1 && q % 2 == 1, "sweep.modes: entries must be positive odd integers");
      for (double r : c.sweep.ratios) require(r > 0.0, "sweep.ratios: entries must be positive");
      break;
    case ExperimentKind::Scaling:
      require(!c.scaling.modes.empty() && !c.scaling.ranks.empty() && !c.scaling.workers.empty(),
              "scaling.modes, scaling.ranks and scaling.workers must be non-empty");
      for (int q : c.scaling.modes) require(q >= 1 && q % 2 == 1, "scaling.modes: entries must be positive odd integers");
      for (int r : c.scaling.ranks) require(r >= 1, "scaling.ranks: entries must be positive");
      for (int w : c.scaling.workers) require(w >= 1, "scaling.workers: entries must be positive");
      require(c.scaling.steps >= 1, "scaling.steps must be at least 1");
      break;
    default:
      break;
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::BgkSteady: return "bgk-steady";
    case ExperimentKind::BgkRelax: return "bgk-relax";
    case ExperimentKind::AdvectionError: return "advection-error";
    case ExperimentKind::MaxwellianApprox: return "maxwellian-approx";
    case ExperimentKind::Scaling: return "scaling";
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (auto k : {ExperimentKind::BgkSteady, ExperimentKind::BgkRelax, ExperimentKind::AdvectionError,
                 ExperimentKind::MaxwellianApprox, ExperimentKind::Scaling}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  c.advection.spec.c = Eigen::MatrixXd(2, 2);
  c.advection.spec.c << 0.5, 1.5, -0.5, 0.5;
  c.sweep.modes = {3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31};
  c.sweep.ratios = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14};
  c.scaling.modes = {5, 7, 9, 11};
  c.scaling.ranks = {2};
  c.scaling.workers = {1, 2, 4};

  Section root(doc, "config");
  require(doc.contains("experiment"), "config: missing 'experiment'");
  std::string kind;
  root.read("experiment", kind);
  c.kind = parse_kind(kind);
  root.read("output_dir", c.output_dir);
  root.read("workers", c.workers);
  root.read("seed", c.seed);
  read_bgk(root.child("bgk"), c.bgk);
  read_advection(root.child("advection"), c.advection);

  Section solver = root.child("solver");
  read_implicit(solver.child("implicit"), c);
  read_explicit(solver.child("explicit"), c);
  solver.finish();

  Section relax = root.child("relax");
  relax.read("epsilon", c.relax.epsilon);
  relax.read("duration", c.relax.duration);
  relax.read("sample_every", c.relax.sample_every);
  relax.finish();

  Section sweep = root.child("sweep");
  sweep.read("modes", c.sweep.modes);
  sweep.read("ratios", c.sweep.ratios);
  sweep.finish();

  Section scaling = root.child("scaling");
  scaling.read("modes", c.scaling.modes);
  scaling.read("ranks", c.scaling.ranks);
  scaling.read("workers", c.scaling.workers);
  scaling.read("steps", c.scaling.steps);
  scaling.finish();
  root.finish();

  c.implicit.workers = c.workers;
  c.implicit.seed = c.seed;
  c.explicit_solver.als.seed = c.seed;
  validate(c);
  c.source = doc;
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig apply_overrides(const json& input, const Overrides& o) {
  json doc = input.is_null() ? json::object() : input;
  if (o.experiment) doc["experiment"] = *o.experiment;
  if (!doc.contains("experiment")) throw ConfigError("config: missing 'experiment'");
  const ExperimentKind kind = parse_kind(doc["experiment"].get<std::string>());
  const bool is_advection = kind == ExperimentKind::AdvectionError;

  if (o.out) doc["output_dir"] = *o.out;
  if (o.workers) doc["workers"] = *o.workers;
  if (o.seed) doc["seed"] = *o.seed;
  if (o.steps) {
    if (is_advection) {
      doc["solver"]["explicit"]["steps"] = *o.steps;
    } else if (kind == ExperimentKind::Scaling) {
      doc["scaling"]["steps"] = *o.steps;
    } else {
      doc["solver"]["implicit"]["steps"] = *o.steps;
      if (kind == ExperimentKind::BgkRelax) doc["relax"]["duration"] = 0.0;
    }
  }
  if (o.dt) doc["solver"][is_advection ? "explicit" : "implicit"]["dt"] = *o.dt;
  if (o.rank) {
    if (is_advection) {
      doc["solver"]["explicit"]["r_max"] = *o.rank;
    } else if (kind == ExperimentKind::Scaling) {
      doc["scaling"]["ranks"] = json::array({*o.rank});
    } else {
      doc["solver"]["implicit"]["rank"] = *o.rank;
    }
  }
  if (o.q_modes) {
    if (is_advection) {
      doc["advection"]["modes"] = *o.q_modes;
    } else if (kind == ExperimentKind::MaxwellianApprox) {
      doc["sweep"]["modes"] = json::array({*o.q_modes});
    } else if (kind == ExperimentKind::Scaling) {
      doc["scaling"]["modes"] = json::array({*o.q_modes});
    } else {
      doc["bgk"]["modes"] = *o.q_modes;
    }
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json c_rows = json::array();
  for (Eigen::Index i = 0; i < c.advection.spec.c.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < c.advection.spec.c.cols(); ++j) row.push_back(c.advection.spec.c(i, j));
    c_rows.push_back(row);
  }
  return {
      {"experiment", to_string(c.kind)},
      {"output_dir", c.output_dir},
      {"workers", c.workers},
      {"seed", c.seed},
      {"bgk",
       {{"temperature", c.bgk.temperature},
        {"number_density", c.bgk.number_density},
        {"gas_constant", c.bgk.gas_constant},
        {"tau_r", c.bgk.tau_r},
        {"b_x", c.bgk.b_x},
        {"b_v", c.bgk.velocity_half_width()},
        {"modes", c.bgk.modes},
        {"rho", c.bgk.rho}}},
      {"advection",
       {{"c", c_rows},
        {"half_width", c.advection.spec.half_width},
        {"modes", c.advection.spec.modes},
        {"probe", c.advection.probe},
        {"sample_every", c.advection.sample_every}}},
      {"solver",
       {{"implicit",
         {{"rank", c.rank},
          {"dt", c.bgk.dt},
          {"steps", c.bgk.n_iter},
          {"eps_tol", c.implicit.eps_tol},
          {"max_sweeps", c.implicit.max_sweeps},
          {"delta_beta", c.implicit.delta_beta},
          {"lsqr_tol", c.implicit.lsqr_tol},
          {"lsqr_maxit", c.implicit.lsqr_maxit},
          {"warm_start_perturbation", c.implicit.warm_start_perturbation},
          {"schedule", c.implicit.schedule == SweepSchedule::Jacobi ? "jacobi" : "sequential"}}},
        {"explicit",
         {{"dt", c.explicit_solver.dt},
          {"steps", c.explicit_steps},
          {"r_max", c.explicit_solver.r_max},
          {"eps_rank", c.explicit_solver.eps_rank},
          {"format", c.format == TensorFormat::HT ? "ht" : "cp"},
          {"als",
           {{"max_sweeps", c.explicit_solver.als.max_sweeps},
            {"change_tol", c.explicit_solver.als.change_tol},
            {"regularization", c.explicit_solver.als.regularization}}}}}}},
      {"relax", {{"epsilon", c.relax.epsilon}, {"duration", c.relax.duration}, {"sample_every", c.relax.sample_every}}},
      {"sweep", {{"modes", c.sweep.modes}, {"ratios", c.sweep.ratios}}},
      {"scaling",
       {{"modes", c.scaling.modes}, {"ranks", c.scaling.ranks}, {"workers", c.scaling.workers}, {"steps", c.scaling.steps}}},
  };
}

}  // namespace lowrank::runner
