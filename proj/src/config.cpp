#include "dqc/config.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dqc/validation.hpp"

namespace dqc {

namespace {

using nlohmann::json;

// Typed accessor that threads the dotted field path through every hop so
// type mismatches and missing keys name the exact entry.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }

  bool has(const std::string& key) const {
    return j_->is_object() && j_->contains(key);
  }

  Node child(const std::string& key) const {
    require(j_->is_object(), path_, "expected an object");
    require(j_->contains(key), path_ + "." + key, "missing required field");
    return Node((*j_)[key], path_ + "." + key);
  }

  std::optional<Node> maybe(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "." + key);
  }

  double number() const {
    require(j_->is_number(), path_, "expected a number");
    return j_->get<double>();
  }

  int integer() const {
    require(j_->is_number_integer(), path_, "expected an integer");
    return j_->get<int>();
  }

  bool boolean() const {
    require(j_->is_boolean(), path_, "expected true or false");
    return j_->get<bool>();
  }

  std::string str() const {
    require(j_->is_string(), path_, "expected a string");
    return j_->get<std::string>();
  }

  std::size_t size() const {
    require(j_->is_array(), path_, "expected an array");
    return j_->size();
  }

  Node item(std::size_t i) const {
    require(j_->is_array(), path_, "expected an array");
    require(i < j_->size(), path_ + "[" + std::to_string(i) + "]",
            "index out of range");
    return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

 private:
  const json* j_;
  std::string path_;
};

Eigen::VectorXd read_vector(const Node& n) {
  Eigen::VectorXd v(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) v(i) = n.item(i).number();
  return v;
}

Eigen::MatrixXd read_matrix(const Node& n) {
  const std::size_t rows = n.size();
  require(rows > 0, n.path(), "expected a non-empty matrix");
  const std::size_t cols = n.item(0).size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Node row = n.item(i);
    require(row.size() == cols, row.path(),
            "ragged matrix: expected " + std::to_string(cols) + " columns");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row.item(j).number();
  }
  return m;
}

AggregateSpec read_aggregate(const Node& n) {
  AggregateSpec spec;
  spec.n_sites = n.child("n_sites").integer();
  spec.site_energies = read_vector(n.child("site_energies_cm1"));
  spec.couplings = read_matrix(n.child("couplings_cm1"));
  spec.overtone_nonlinearity = read_vector(n.child("overtone_nonlinearity_cm1"));
  spec.combination_nonlinearity =
      read_matrix(n.child("combination_nonlinearity_cm1"));
  spec.site_dipoles = read_vector(n.child("site_dipoles"));
  if (auto k = n.maybe("overtone_dipole_scale"))
    spec.overtone_dipole_scale = k->number();
  spec.validate(n.path());
  return spec;
}

BathSpec read_bath(const Node& n) {
  BathSpec bath;
  Node od = n.child("overdamped");
  bath.lambda0 = od.child("lambda_cm1").number();
  bath.gamma0 = od.child("gamma_cm1").number();
  if (auto modes = n.maybe("modes")) {
    for (std::size_t j = 0; j < modes->size(); ++j) {
      Node m = modes->item(j);
      bath.modes.push_back({m.child("lambda_cm1").number(),
                            m.child("omega_cm1").number(),
                            m.child("gamma_cm1").number()});
    }
  }
  bath.temperature = n.child("temperature_K").number();
  bath.validate(n.path());
  return bath;
}

PhotonSource read_source(const Node& n) {
  const std::string type = n.child("type").str();
  if (type == "spdc") {
    SpdcSource s;
    s.pump_center = n.child("pump_center_cm1").number();
    s.pump_width = n.child("pump_width_fs").number();
    s.t1 = n.child("t1_fs").number();
    s.t2 = n.child("t2_fs").number();
    s.center1 = n.child("center1_cm1").number();
    s.center2 = n.child("center2_cm1").number();
    if (auto a = n.maybe("alpha")) s.alpha = a->number();
    if (auto e = n.maybe("e0")) s.e0 = e->number();
    s.validate(n.path());
    return s;
  }
  if (type == "classical") {
    Node pulses = n.child("pulses");
    require(pulses.size() == 4, pulses.path(), "expected exactly 4 pulses");
    ClassicalPulseSet set;
    for (std::size_t j = 0; j < 4; ++j) {
      Node p = pulses.item(j);
      set.pulses[j].center = p.child("center_cm1").number();
      set.pulses[j].tau0 = p.child("tau0_fs").number();
      if (auto c = p.maybe("chirp_fs2")) set.pulses[j].chirp = c->number();
      if (auto e = p.maybe("e0")) set.pulses[j].e0 = e->number();
    }
    set.validate(n.path());
    return set;
  }
  throw ValidationError(n.path() + ".type",
                        "expected 'spdc' or 'classical', got '" + type + "'");
}

AxisSpec read_axis(const Node& n) {
  AxisSpec axis;
  axis.min = n.child("min").number();
  axis.max = n.child("max").number();
  axis.count = n.child("count").integer();
  axis.validate(n.path());
  return axis;
}

JobConfig read_job(const Node& n) {
  JobConfig job;
  if (auto o1 = n.maybe("omega1_cm1")) {
    if (o1->raw().is_string()) {
      require(o1->str() == "auto", o1->path(),
              "expected a number or \"auto\"");
    } else {
      job.omega1 = o1->number();
    }
  }
  job.omega2_axis = read_axis(n.child("omega2_axis_cm1"));
  job.omega3_axis = read_axis(n.child("omega3_axis_cm1"));
  if (auto v = n.maybe("normalize")) job.normalize = v->boolean();
  if (auto v = n.maybe("pathway_filter"))
    job.filter = pathway_filter_from_string(v->str(), v->path());
  if (auto v = n.maybe("signed_gap_frequencies"))
    job.signed_gaps = v->boolean();
  if (auto v = n.maybe("lamb_shift")) job.lamb_shift = v->boolean();
  if (auto v = n.maybe("s0")) job.s0 = v->number();
  if (auto j = n.maybe("jsa")) {
    if (auto v = j->maybe("points")) job.jsa.points = v->integer();
    if (auto v = j->maybe("half_width_cm1")) {
      if (!v->raw().is_null()) job.jsa.half_width = v->number();
    }
    if (auto v = j->maybe("top_k")) job.jsa.top_k = v->integer();
    require(job.jsa.points >= 32, j->path() + ".points",
            "need at least 32 points per axis");
    require(job.jsa.top_k >= 1, j->path() + ".top_k", "must be >= 1");
  }
  return job;
}

OutputConfig read_output(const Node& n) {
  OutputConfig out;
  if (auto v = n.maybe("directory")) out.directory = v->str();
  if (auto v = n.maybe("formats")) {
    out.write_real = out.write_imag = out.write_magnitude =
        out.write_metadata = false;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string f = v->item(i).str();
      if (f == "real") out.write_real = true;
      else if (f == "imag") out.write_imag = true;
      else if (f == "magnitude") out.write_magnitude = true;
      else if (f == "metadata") out.write_metadata = true;
      else
        throw ValidationError(v->item(i).path(),
                              "unknown format '" + f +
                                  "'; expected real|imag|magnitude|metadata");
    }
  }
  if (auto v = n.maybe("render")) out.render = v->boolean();
  if (auto v = n.maybe("palette")) out.palette = v->str();
  require(out.palette == "viridis" || out.palette == "grayscale",
          n.path() + ".palette", "expected viridis or grayscale");
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

json source_to_json(const PhotonSource& source) {
  json j;
  if (const auto* s = std::get_if<SpdcSource>(&source)) {
    j["type"] = "spdc";
    j["pump_center_cm1"] = s->pump_center;
    j["pump_width_fs"] = s->pump_width;
    j["t1_fs"] = s->t1;
    j["t2_fs"] = s->t2;
    j["center1_cm1"] = s->center1;
    j["center2_cm1"] = s->center2;
    j["alpha"] = s->alpha;
    j["e0"] = s->e0;
  } else {
    const auto& set = std::get<ClassicalPulseSet>(source);
    j["type"] = "classical";
    json pulses = json::array();
    for (const auto& p : set.pulses) {
      pulses.push_back({{"center_cm1", p.center},
                        {"tau0_fs", p.tau0},
                        {"chirp_fs2", p.chirp},
                        {"e0", p.e0}});
    }
    j["pulses"] = pulses;
  }
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin, std::string("parse error: ") + e.what());
  }
  Node root(j, "config");
  RunConfig config;
  config.aggregate = read_aggregate(root.child("aggregate"));
  config.bath = read_bath(root.child("bath"));
  config.source = read_source(root.child("source"));
  config.job = read_job(root.child("job"));
  if (auto out = root.maybe("output")) config.output = read_output(*out);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(path.string(), "cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string canonical_config(const RunConfig& c) {
  json j;
  j["aggregate"] = {
      {"n_sites", c.aggregate.n_sites},
      {"site_energies_cm1", vector_to_json(c.aggregate.site_energies)},
      {"couplings_cm1", matrix_to_json(c.aggregate.couplings)},
      {"overtone_nonlinearity_cm1",
       vector_to_json(c.aggregate.overtone_nonlinearity)},
      {"combination_nonlinearity_cm1",
       matrix_to_json(c.aggregate.combination_nonlinearity)},
      {"site_dipoles", vector_to_json(c.aggregate.site_dipoles)},
      {"overtone_dipole_scale", c.aggregate.overtone_dipole_scale}};

  json modes = json::array();
  for (const auto& m : c.bath.modes)
    modes.push_back({{"lambda_cm1", m.lambda},
                     {"omega_cm1", m.omega},
                     {"gamma_cm1", m.gamma}});
  j["bath"] = {{"overdamped",
                {{"lambda_cm1", c.bath.lambda0}, {"gamma_cm1", c.bath.gamma0}}},
               {"modes", modes},
               {"temperature_K", c.bath.temperature}};

  j["source"] = source_to_json(c.source);

  json job;
  job["omega1_cm1"] = c.job.omega1 ? json(*c.job.omega1) : json("auto");
  job["omega2_axis_cm1"] = {{"min", c.job.omega2_axis.min},
                            {"max", c.job.omega2_axis.max},
                            {"count", c.job.omega2_axis.count}};
  job["omega3_axis_cm1"] = {{"min", c.job.omega3_axis.min},
                            {"max", c.job.omega3_axis.max},
                            {"count", c.job.omega3_axis.count}};
  job["normalize"] = c.job.normalize;
  job["pathway_filter"] = to_string(c.job.filter);
  job["signed_gap_frequencies"] = c.job.signed_gaps;
  job["lamb_shift"] = c.job.lamb_shift;
  job["s0"] = c.job.s0;
  job["jsa"] = {{"points", c.job.jsa.points},
                {"half_width_cm1",
                 c.job.jsa.half_width ? json(*c.job.jsa.half_width) : json()},
                {"top_k", c.job.jsa.top_k}};
  j["job"] = job;

  json formats = json::array();
  if (c.output.write_real) formats.push_back("real");
  if (c.output.write_imag) formats.push_back("imag");
  if (c.output.write_magnitude) formats.push_back("magnitude");
  if (c.output.write_metadata) formats.push_back("metadata");
  j["output"] = {{"directory", c.output.directory},
                 {"formats", formats},
                 {"render", c.output.render},
                 {"palette", c.output.palette}};

  return j.dump(2);
}

std::string config_hash(const RunConfig& config) {
  const std::string text = canonical_config(config);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream oss;
  oss << std::hex << std::setw(16) << std::setfill('0') << h;
  return oss.str();
}

namespace {

template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("stage ") + stage + ": " + e.what());
  }
}

Diagnostics make_diagnostics(const RunConfig& config, const ExcitonBasis& basis,
                             const DephasingRates& rates, double omega1) {
  Diagnostics d;
  d.n_sites = config.aggregate.n_sites;
  d.n_one_exciton = basis.n_one_exciton();
  d.n_two_exciton = basis.n_two_exciton();
  d.overtone_states = basis.overtone_count();
  d.combination_states = basis.combination_count();
  d.omega1 = omega1;

  std::vector<std::pair<int, double>> dip;
  for (int e = 0; e < basis.n_one_exciton(); ++e)
    dip.emplace_back(e, std::abs(basis.dip_ge(e)));
  std::sort(dip.begin(), dip.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  if (dip.size() > 10) dip.resize(10);
  d.strongest_ge_dipoles = std::move(dip);

  d.gamma_e_min = rates.gamma_e.minCoeff();
  d.gamma_e_max = rates.gamma_e.maxCoeff();
  d.gamma_f_min = rates.gamma_f.minCoeff();
  d.gamma_f_max = rates.gamma_f.maxCoeff();

  if (const auto* spdc = std::get_if<SpdcSource>(&config.source)) {
    JsaGrid grid = default_jsa_grid(*spdc, config.job.jsa.points);
    if (config.job.jsa.half_width) grid.half_width = *config.job.jsa.half_width;
    d.jsa_singular_values =
        jsa_singular_values(*spdc, grid, config.job.jsa.top_k);
  }
  return d;
}

}  // namespace

RunResult run_job(const RunConfig& config, int threads) {
  const ExcitonBasis basis = staged(
      "diagonalize", [&] { return diagonalize_manifolds(config.aggregate); });
  const DephasingRates rates =
      staged("dephasing", [&] { return dephasing_rates(basis, config.bath); });
  ResonanceOptions ropt;
  ropt.lamb_shift = config.job.lamb_shift;
  const ResonanceTable resonances = staged(
      "resonances", [&] { return resonance_table(basis, config.bath, ropt); });

  SpectrumJob job;
  job.omega1 = config.job.omega1 ? *config.job.omega1
                                 : default_omega1(basis, resonances);
  job.omega2_axis = config.job.omega2_axis;
  job.omega3_axis = config.job.omega3_axis;
  job.source = config.source;
  job.basis = basis;
  job.resonances = resonances;
  job.normalize = config.job.normalize;
  job.filter = config.job.filter;
  job.signed_gaps = config.job.signed_gaps;
  job.s0 = config.job.s0;

  RunResult result;
  result.grid =
      staged("spectrum", [&] { return spectrum_2d(job, threads); });
  result.diagnostics = staged("diagnostics", [&] {
    return make_diagnostics(config, basis, rates, job.omega1);
  });
  return result;
}

Diagnostics diagnose(const RunConfig& config) {
  const ExcitonBasis basis = staged(
      "diagonalize", [&] { return diagonalize_manifolds(config.aggregate); });
  const DephasingRates rates =
      staged("dephasing", [&] { return dephasing_rates(basis, config.bath); });
  ResonanceOptions ropt;
  ropt.lamb_shift = config.job.lamb_shift;
  const ResonanceTable resonances = staged(
      "resonances", [&] { return resonance_table(basis, config.bath, ropt); });
  const double omega1 = config.job.omega1 ? *config.job.omega1
                                          : default_omega1(basis, resonances);
  return staged("diagnostics", [&] {
    return make_diagnostics(config, basis, rates, omega1);
  });
}

}  // namespace dqc
