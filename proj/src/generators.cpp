#include "tclust/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "tclust/error.hpp"
#include "tclust/io.hpp"

namespace tclust {

void Cnf3::validate() const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& clause = clauses[c];
    for (std::size_t j = 0; j < 3; ++j) {
      if (clause[j].var >= variables) {
        std::ostringstream os;
        os << "clause " << c << " uses variable " << clause[j].var + 1
           << " beyond the " << variables << " declared";
        throw ValidationError(os.str());
      }
      for (std::size_t q = 0; q < j; ++q) {
        if (clause[q].var == clause[j].var) {
          std::ostringstream os;
          os << "clause " << c << " repeats variable " << clause[j].var + 1;
          throw ValidationError(os.str());
        }
      }
    }
  }
}

bool Cnf3::satisfied_by(const std::vector<bool>& assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](Literal lit) {
      return assignment.at(lit.var) != lit.negated;
    });
  });
}

Cnf3 parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> declared_clauses;
  Cnf3 cnf;
  std::vector<long> pending;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string format;
      long vars = -1;
      long count = -1;
      if (declared_clauses || !(ls >> format >> vars >> count) || format != "cnf" ||
          vars < 0 || count < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": bad problem line");
      }
      cnf.variables = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      continue;
    }
    if (!declared_clauses) {
      throw ParseError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    }
    std::istringstream values(line);
    std::string token;
    while (values >> token) {
      long v = 0;
      try {
        std::size_t used = 0;
        v = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad literal '" + token + "'");
      }
      if (v != 0) {
        pending.push_back(v);
        continue;
      }
      if (pending.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) + ": clause has " +
                         std::to_string(pending.size()) + " literals, expected 3");
      }
      std::array<Literal, 3> clause;
      for (std::size_t j = 0; j < 3; ++j) {
        clause[j] = {static_cast<std::size_t>(std::labs(pending[j]) - 1), pending[j] < 0};
      }
      cnf.clauses.push_back(clause);
      pending.clear();
    }
  }
  if (!declared_clauses) throw ParseError("missing 'p cnf' header");
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0");
  if (cnf.clauses.size() != *declared_clauses) {
    throw ParseError("header declares " + std::to_string(*declared_clauses) +
                     " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  cnf.validate();
  return cnf;
}

std::string to_dimacs(const Cnf3& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (const Literal lit : clause) {
      os << (lit.negated ? "-" : "") << lit.var + 1 << ' ';
    }
    os << "0\n";
  }
  return os.str();
}

Cnf3 all_sign_patterns_cnf() {
  Cnf3 cnf;
  cnf.variables = 3;
  for (unsigned mask = 0; mask < 8; ++mask) {
    cnf.clauses.push_back({Literal{0, (mask & 4U) != 0}, Literal{1, (mask & 2U) != 0},
                           Literal{2, (mask & 1U) != 0}});
  }
  return cnf;
}

void GadgetParams::validate() const {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw InvalidArgumentError("r0 must be > 0");
  if (!(delta0 > 0.0) || !(delta0 < r0 * std::sqrt(3.0) / 4.0)) {
    throw InvalidArgumentError("delta0 must satisfy 0 < delta0 < r0 * sqrt(3) / 4");
  }
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw InvalidArgumentError("rho must be >= 1");
}

nlohmann::json GeneratedInstance::to_json() const {
  auto doc = instance_to_json(sampling);
  doc["k"] = k;
  doc["metadata"] = metadata;
  if (planted) doc["planted"] = clustering_to_json(*planted);
  return doc;
}

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Keeps every step a hair under the bound so rounding never pushes a step
// past delta0 under exact comparison.
constexpr double kStepMargin = 1.0 - 1e-9;

struct Frame {
  std::vector<Vec2> points;
  std::optional<Vec2> extra;
};

// Pose of one variable gadget: x_i at mid - (r0/4) u(phi), not x_i at
// mid + (r0/4) u(phi).
struct Pose {
  Vec2 mid;
  double phi = 0.0;
};

class GadgetMovie {
 public:
  GadgetMovie(std::size_t variables, const GadgetParams& params)
      : params_(params), poses_(variables) {
    const double spacing = params.rho * params.r0 / 2.0 + params.r0 / 2.0;
    for (std::size_t v = 0; v < variables; ++v) {
      poses_[v].mid = {static_cast<double>(v) * spacing, 0.0};
    }
    emit();
  }

  const std::vector<Pose>& poses() const { return poses_; }
  std::size_t frame_count() const { return frames_.size(); }
  const std::vector<Frame>& frames() const { return frames_; }

  void emit(std::optional<Vec2> extra = std::nullopt) {
    Frame f;
    const double half = params_.r0 / 4.0;
    for (const auto& pose : poses_) {
      f.points.push_back(pose.mid - half * unit(pose.phi));
      f.points.push_back(pose.mid + half * unit(pose.phi));
    }
    f.extra = extra;
    frames_.push_back(std::move(f));
  }

  void append(const Frame& f) { frames_.push_back(f); }

  // Rotation about the gadget midpoint; each end moves along a chord of
  // length <= delta0.
  void rotate(std::size_t v, double target) {
    const double start = poses_[v].phi;
    double turn = std::remainder(target - start, 2.0 * std::numbers::pi);
    if (turn == 0.0) return;
    const double max_turn = 2.0 * std::asin(2.0 * params_.delta0 / params_.r0) * kStepMargin;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(turn) / max_turn));
    for (std::size_t j = 1; j <= steps; ++j) {
      poses_[v].phi = start + turn * static_cast<double>(j) / static_cast<double>(steps);
      emit();
    }
  }

  void move(std::size_t v, Vec2 target) {
    const Vec2 start = poses_[v].mid;
    const Vec2 diff = target - start;
    const double length = std::hypot(diff.x, diff.y);
    if (length == 0.0) return;
    const auto steps = static_cast<std::size_t>(std::ceil(length / (params_.delta0 * kStepMargin)));
    for (std::size_t j = 1; j <= steps; ++j) {
      poses_[v].mid = start + (static_cast<double>(j) / static_cast<double>(steps)) * diff;
      emit();
    }
  }

  void set_poses(std::vector<Pose> poses) { poses_ = std::move(poses); }

 private:
  GadgetParams params_;
  std::vector<Pose> poses_;
  std::vector<Frame> frames_;
};

std::string literal_name(Literal lit) {
  return (lit.negated ? "~x" : "x") + std::to_string(lit.var + 1);
}

}  // namespace

GeneratedInstance gen_sat3(const Cnf3& cnf, const GadgetParams& params) {
  params.validate();
  cnf.validate();
  if (cnf.variables == 0) throw InvalidArgumentError("formula has no variables");
  const double pi = std::numbers::pi;
  const double r0 = params.r0;
  const double lane_y = -(params.rho * r0 / 2.0 + r0 / 4.0);
  const double approach = r0;
  const double staging_y = lane_y - approach - r0 / 4.0;

  GadgetMovie movie(cnf.variables, params);
  nlohmann::json phases = nlohmann::json::array();
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    auto lits = cnf.clauses[c];
    std::sort(lits.begin(), lits.end(), [](Literal a, Literal b) { return a.var < b.var; });
    const std::vector<Pose> parked = movie.poses();
    const Vec2 staging{parked[lits[1].var].mid.x, staging_y};
    const std::size_t assembly_start = movie.frame_count() - 1;

    // Middle variable first, straight down; then the outer two via the lane.
    const std::array<std::pair<Literal, double>, 3> order{
        {{lits[1], pi / 2.0}, {lits[0], 7.0 * pi / 6.0}, {lits[2], 11.0 * pi / 6.0}}};
    for (const auto& [lit, theta] : order) {
      const std::size_t v = lit.var;
      movie.rotate(v, lit.negated ? theta + pi : theta);
      const Vec2 docked = staging + (r0 / 4.0) * unit(theta);
      if (v != lits[1].var) {
        movie.move(v, {parked[v].mid.x, lane_y});
        movie.move(v, staging + (approach + r0 / 4.0) * unit(theta));
      }
      movie.move(v, docked);
    }
    const std::size_t assembled = movie.frame_count() - 1;

    const auto steps = static_cast<std::size_t>(
        std::ceil(params.rho * r0 / (params.delta0 * kStepMargin)));
    const double reach = params.rho * r0;
    const std::size_t extra_start = movie.frame_count();
    for (std::size_t j = 0; j <= steps; ++j) {
      movie.emit(staging + (reach * static_cast<double>(j) / static_cast<double>(steps)) *
                               Vec2{0.0, -1.0});
    }
    for (std::size_t j = steps; j-- > 0;) {
      movie.emit(staging + (reach * static_cast<double>(j) / static_cast<double>(steps)) *
                               Vec2{0.0, -1.0});
    }
    const std::size_t extra_end = movie.frame_count() - 1;

    const std::vector<Frame> assembly(movie.frames().begin() + static_cast<long>(assembly_start),
                                      movie.frames().begin() + static_cast<long>(assembled) + 1);
    for (std::size_t j = assembly.size(); j-- > 0;) movie.append(assembly[j]);
    movie.set_poses(parked);

    phases.push_back({{"clause", c},
                      {"literals", {literal_name(lits[0]), literal_name(lits[1]),
                                    literal_name(lits[2])}},
                      {"assembly", {assembly_start + 1, assembled}},
                      {"extra", {extra_start, extra_end}},
                      {"disassembly", {extra_end + 1, movie.frame_count() - 1}}});
  }

  std::vector<std::vector<double>> coords;
  std::vector<std::vector<PointId>> levels;
  for (const auto& frame : movie.frames()) {
    std::vector<PointId> level;
    for (const Vec2 q : frame.points) {
      level.push_back({coords.size()});
      coords.push_back({q.x, q.y});
    }
    if (frame.extra) {
      level.push_back({coords.size()});
      coords.push_back({frame.extra->x, frame.extra->y});
    }
    levels.push_back(std::move(level));
  }

  nlohmann::json roles = nlohmann::json::array();
  for (std::size_t v = 0; v < cnf.variables; ++v) {
    roles.push_back(literal_name({v, false}));
    roles.push_back(literal_name({v, true}));
  }
  roles.push_back("extra");
  const double size_scale = params.rho * r0 * static_cast<double>(cnf.variables * cnf.variables) *
                            static_cast<double>(cnf.clauses.size()) / params.delta0;

  GeneratedInstance out{
      TemporalSampling(FiniteMetric::euclidean(2, std::move(coords)), std::move(levels)),
      cnf.variables, std::nullopt, {}};
  out.metadata = {{"generator", "sat3"},
                  {"r0", r0},
                  {"delta0", params.delta0},
                  {"rho", params.rho},
                  {"variables", cnf.variables},
                  {"clauses", cnf.clauses.size()},
                  {"cnf", to_dimacs(cnf)},
                  {"roles", roles},
                  {"phases", phases},
                  {"size_scale", size_scale}};
  return out;
}

void SetCoverInstance::validate() const {
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::set<std::size_t> seen;
    for (std::size_t e : sets[s]) {
      if (e >= universe) {
        throw ValidationError("set " + std::to_string(s) + " names element " +
                              std::to_string(e) + " outside the universe");
      }
      if (!seen.insert(e).second) {
        throw ValidationError("set " + std::to_string(s) + " lists element " +
                              std::to_string(e) + " twice");
      }
    }
  }
}

SetCoverInstance setcover_from_json(const nlohmann::json& doc) {
  SetCoverInstance sc;
  try {
    if (!doc.is_object()) throw ParseError("$: expected an object");
    if (!doc.contains("universe") || !doc["universe"].is_number_unsigned()) {
      throw ParseError("$.universe: expected a nonnegative integer");
    }
    sc.universe = doc["universe"].get<std::size_t>();
    if (!doc.contains("sets") || !doc["sets"].is_array()) {
      throw ParseError("$.sets: expected an array");
    }
    for (std::size_t s = 0; s < doc["sets"].size(); ++s) {
      const auto& set = doc["sets"][s];
      if (!set.is_array()) throw ParseError("$.sets[" + std::to_string(s) + "]: expected an array");
      std::vector<std::size_t> members;
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (!set[j].is_number_unsigned()) {
          throw ParseError("$.sets[" + std::to_string(s) + "][" + std::to_string(j) +
                           "]: expected a nonnegative integer");
        }
        members.push_back(set[j].get<std::size_t>());
      }
      sc.sets.push_back(std::move(members));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("$: ") + e.what());
  }
  sc.validate();
  return sc;
}

nlohmann::json setcover_to_json(const SetCoverInstance& sc) {
  return {{"universe", sc.universe}, {"sets", sc.sets}};
}

GeneratedInstance gen_setcover_metric(const SetCoverInstance& sc) {
  sc.validate();
  const std::size_t m = sc.sets.size();
  const std::size_t n = m + sc.universe;
  if (n == 0) throw InvalidArgumentError("set-cover instance has no sets and no elements");
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 2.0));
  for (std::size_t a = 0; a < n; ++a) dist[a][a] = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) dist[a][b] = 1.0;
    }
    for (std::size_t e : sc.sets[a]) {
      dist[a][m + e] = 1.0;
      dist[m + e][a] = 1.0;
    }
  }
  std::vector<PointId> level;
  for (std::size_t a = 0; a < n; ++a) level.push_back({a});
  nlohmann::json roles = nlohmann::json::array();
  for (std::size_t s = 0; s < m; ++s) roles.push_back("S" + std::to_string(s + 1));
  for (std::size_t e = 0; e < sc.universe; ++e) roles.push_back("u" + std::to_string(e + 1));
  GeneratedInstance out{TemporalSampling(FiniteMetric::from_matrix(dist), {level}), 0,
                        std::nullopt, {}};
  out.metadata = {{"generator", "setcover"}, {"roles", roles}, {"r", 1.0}, {"delta", 0.0}};
  return out;
}

SetCoverInstance set_cover_example() {
  return {6, {{0, 1}, {1, 2, 3, 5}, {1, 2, 4}, {4}, {4, 5}}};
}

GeneratedInstance gen_random_walkers(const WalkerParams& params) {
  if (params.k == 0 || params.t == 0 || params.dim == 0) {
    throw InvalidArgumentError("k, t and dim must be positive");
  }
  if (!(params.step >= 0.0) || !(params.radius >= 0.0)) {
    throw InvalidArgumentError("step and radius must be >= 0");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Random vector of length < limit.
  auto jitter = [&](double limit) {
    std::vector<double> v(params.dim);
    double norm = 0.0;
    for (auto& x : v) {
      x = gauss(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    const double length = limit * uniform(rng) * kStepMargin;
    for (auto& x : v) x = norm > 0.0 ? x / norm * length : 0.0;
    return v;
  };

  const double extent = 4.0 * static_cast<double>(params.k) * (params.step + params.radius + 1.0);
  std::vector<std::vector<double>> walkers(params.k, std::vector<double>(params.dim));
  for (auto& w : walkers) {
    for (auto& x : w) x = extent * uniform(rng);
  }
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<PointId>> levels;
  Clustering planted;
  planted.trajectories.resize(params.k);
  for (std::size_t i = 0; i < params.t; ++i) {
    if (i > 0) {
      for (auto& w : walkers) {
        const auto d = jitter(params.step);
        for (std::size_t j = 0; j < params.dim; ++j) w[j] += d[j];
      }
    }
    std::vector<PointId> level;
    for (std::size_t w = 0; w < params.k; ++w) {
      planted.trajectories[w].points.push_back({coords.size()});
      level.push_back({coords.size()});
      coords.push_back(walkers[w]);
    }
    for (std::size_t e = 0; e < params.extras_per_level; ++e) {
      const auto& owner = walkers[std::uniform_int_distribution<std::size_t>(0, params.k - 1)(rng)];
      const auto d = jitter(params.radius);
      std::vector<double> q(params.dim);
      for (std::size_t j = 0; j < params.dim; ++j) q[j] = owner[j] + d[j];
      level.push_back({coords.size()});
      coords.push_back(std::move(q));
    }
    levels.push_back(std::move(level));
  }
  GeneratedInstance out{
      TemporalSampling(FiniteMetric::euclidean(params.dim, std::move(coords)), std::move(levels)),
      params.k, std::move(planted), {}};
  out.metadata = {{"generator", "walkers"}, {"seed", params.seed},   {"k", params.k},
                  {"t", params.t},          {"step", params.step},   {"radius", params.radius},
                  {"dim", params.dim},      {"extras_per_level", params.extras_per_level}};
  return out;
}

TemporalSampling collinear_pair_instance(double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgumentError("spacing must be > 0");
  std::vector<std::vector<double>> coords;
  std::vector<PointId> level;
  for (std::size_t j = 0; j < 5; ++j) {
    coords.push_back({spacing * static_cast<double>(j)});
    level.push_back({j});
  }
  return TemporalSampling(FiniteMetric::euclidean(1, std::move(coords)), {level, level});
}

}  // namespace tclust
