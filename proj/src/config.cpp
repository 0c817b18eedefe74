#include "wma/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "wma/cases.hpp"
#include "wma/error.hpp"
#include "wma/io.hpp"

namespace wma {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::string s = v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& tok : split_list(v)) out.push_back(to_double(key, tok));
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(xs[i]);
  return s;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 3) throw ConfigError("config: PDE runs need n >= 3");
  if (n > 4) throw ConfigError("config: PDE runs support n <= 4");
  const auto names = case_names();
  if (case_name != "sampled" && std::find(names.begin(), names.end(), case_name) == names.end()) {
    throw ConfigError("config: unknown case '" + case_name + "'");
  }
  if (case_name == "sampled" && (f_file.empty() || phi_file.empty())) {
    throw ConfigError("config: case = sampled needs f_file and phi_file");
  }
  if (!domain_kind.empty() && domain_kind != "ball" && domain_kind != "ellipsoid") {
    throw ConfigError("config: domain must be ball or ellipsoid");
  }
  if (domain_kind == "ellipsoid" && static_cast<int>(axes.size()) != n) {
    throw ConfigError("config: axes needs n values");
  }
  if (!center.empty() && static_cast<int>(center.size()) != n) throw ConfigError("config: center needs n values");
  if (resolutions.empty()) throw ConfigError("config: at least one resolution is required");
  if (report != "json" && report != "csv") throw ConfigError("config: report must be json or csv");
  if (encoding != "binary" && encoding != "text") throw ConfigError("config: encoding must be binary or text");
  solver.validate();
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (seen[key]++ > 0) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    if (key == "n") c.n = to_int(key, val);
    else if (key == "case") c.case_name = val;
    else if (key == "domain") c.domain_kind = val;
    else if (key == "radius") c.radius = to_double(key, val);
    else if (key == "axes") c.axes = to_doubles(key, val);
    else if (key == "center") c.center = to_doubles(key, val);
    else if (key == "f_file") c.f_file = val;
    else if (key == "phi_file") c.phi_file = val;
    else if (key == "resolution") {
      c.resolutions.clear();
      for (const auto& tok : split_list(val)) c.resolutions.push_back(to_int(key, tok));
    } else if (key == "newton_tol") c.solver.newton_tol = to_double(key, val);
    else if (key == "max_newton_iters") c.solver.max_newton_iters = to_int(key, val);
    else if (key == "homotopy_steps") c.solver.homotopy_steps = to_int(key, val);
    else if (key == "min_step") c.solver.min_step = to_double(key, val);
    else if (key == "damping") c.solver.damping = to_double(key, val);
    else if (key == "verify_barriers") c.verify_barriers = to_bool(key, val);
    else if (key == "gamma") c.gamma = to_double(key, val);
    else if (key == "sigma") c.sigma = to_double(key, val);
    else if (key == "epsilon") c.epsilon = to_double(key, val);
    else if (key == "report") c.report = val;
    else if (key == "encoding") c.encoding = val;
    else if (key == "output_dir") c.output_dir = val;
    else if (key == "force") c.force = to_bool(key, val);
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string canonical_form(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  kv["n"] = std::to_string(c.n);
  kv["case"] = c.case_name;
  kv["domain"] = c.domain_kind;
  kv["radius"] = fmt(c.radius);
  kv["axes"] = fmt_list(c.axes);
  kv["center"] = fmt_list(c.center);
  kv["f_file"] = c.f_file;
  kv["phi_file"] = c.phi_file;
  std::string res;
  for (std::size_t i = 0; i < c.resolutions.size(); ++i) res += (i ? " " : "") + std::to_string(c.resolutions[i]);
  kv["resolution"] = res;
  kv["newton_tol"] = fmt(c.solver.newton_tol);
  kv["max_newton_iters"] = std::to_string(c.solver.max_newton_iters);
  kv["homotopy_steps"] = std::to_string(c.solver.homotopy_steps);
  kv["min_step"] = fmt(c.solver.min_step);
  kv["damping"] = fmt(c.solver.damping);
  kv["verify_barriers"] = c.verify_barriers ? "true" : "false";
  kv["gamma"] = fmt(c.gamma);
  kv["sigma"] = fmt(c.sigma);
  kv["epsilon"] = fmt(c.epsilon);
  kv["report"] = c.report;
  kv["encoding"] = c.encoding;
  kv["output_dir"] = c.output_dir;
  kv["force"] = c.force ? "true" : "false";
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string config_digest(const RunConfig& config) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char ch : canonical_form(config)) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

DomainSpec build_domain(const RunConfig& c) {
  c.validate();
  Eigen::VectorXd center = c.center.empty() ? Eigen::VectorXd::Zero(c.n)
                                            : Eigen::Map<const Eigen::VectorXd>(c.center.data(), c.n).eval();
  try {
    if (c.domain_kind == "ball") return DomainSpec::ball(c.n, c.radius, center);
    if (c.domain_kind == "ellipsoid") {
      return DomainSpec::ellipsoid(Eigen::Map<const Eigen::VectorXd>(c.axes.data(), c.n), center);
    }
    if (c.case_name == "ellipsoid-near-sphere") {
      Eigen::VectorXd axes = named_case(c.case_name, c.n).domain.axes();
      return DomainSpec::ellipsoid(axes, center);
    }
    return DomainSpec::ball(c.n, c.radius, center);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: invalid domain: ") + e.what());
  }
}

ProblemSpec build_problem(const RunConfig& c, const DomainSpec& domain) {
  if (c.case_name != "sampled") return case_problem(c.case_name, domain);
  auto f = std::make_shared<SampledField>(read_sampled(c.base_dir / c.f_file));
  auto phi = std::make_shared<SampledField>(read_sampled(c.base_dir / c.phi_file));
  if (f->n != c.n || phi->n != c.n) throw ConfigError("sampled arrays have the wrong dimension");
  ProblemSpec p;
  p.n = c.n;
  p.name = "sampled";
  p.f = [f](const Eigen::VectorXd& x) { return (*f)(x); };
  p.phi = [phi](const Eigen::VectorXd& x) { return (*phi)(x); };
  return p;
}

}  // namespace wma
