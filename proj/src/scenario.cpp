#include "l0guide/scenario.hpp"

#include "l0guide/csv_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace l0guide {

namespace {

// ---------------------------------------------------------------------------
// Sectioned key=value document
// ---------------------------------------------------------------------------

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Section {
 public:
  explicit Section(std::string name) : name_(std::move(name)) {}

  void set(const std::string& key, const std::string& value, int line) {
    if (!values_.emplace(key, value).second)
      throw GuidanceError(ErrorKind::ParseError,
                          "line " + std::to_string(line) + ": duplicate key '" + key + "' in [" + name_ + "]");
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string text(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw GuidanceError(ErrorKind::ParseError, "missing key '" + qualified(key) + "'");
    used_.push_back(key);
    return it->second;
  }

  double number(const std::string& key) {
    const std::string raw = text(key);
    double value = 0.0;
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw GuidanceError(ErrorKind::ParseError, "'" + qualified(key) + "' is not a number: " + raw);
    if (!std::isfinite(value)) throw GuidanceError(ErrorKind::ValidationError, qualified(key) + " must be finite");
    return value;
  }

  int count(const std::string& key) {
    const double value = number(key);
    if (value != std::floor(value) || value < 0 || value > 1e8)
      throw GuidanceError(ErrorKind::ValidationError, qualified(key) + " must be a non-negative integer");
    return static_cast<int>(value);
  }

  double positive(const std::string& key) {
    const double value = number(key);
    if (!(value > 0.0)) throw GuidanceError(ErrorKind::ValidationError, qualified(key) + " must be positive");
    return value;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  void reject_unused() const {
    for (const auto& [key, value] : values_)
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw GuidanceError(ErrorKind::ParseError, "unknown key '" + qualified(key) + "'");
  }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

class Document {
 public:
  Document(std::string_view text, std::vector<std::string> allowed) {
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto next = text.find('\n', pos);
      const std::string_view raw = text.substr(pos, next == std::string_view::npos ? text.size() - pos : next - pos);
      pos = next == std::string_view::npos ? text.size() + 1 : next + 1;
      ++line_no;

      std::string_view line = raw;
      if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;

      const std::string where = "line " + std::to_string(line_no) + ": ";
      if (line.front() == '[') {
        if (line.back() != ']') throw GuidanceError(ErrorKind::ParseError, where + "unterminated section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (std::find(allowed.begin(), allowed.end(), current) == allowed.end())
          throw GuidanceError(ErrorKind::ParseError, where + "unknown section [" + current + "]");
        if (sections_.count(current)) throw GuidanceError(ErrorKind::ParseError, where + "duplicate section [" + current + "]");
        sections_.emplace(current, Section(current));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw GuidanceError(ErrorKind::ParseError, where + "expected key = value");
      if (current.empty()) throw GuidanceError(ErrorKind::ParseError, where + "key outside of any section");
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw GuidanceError(ErrorKind::ParseError, where + "empty key");
      sections_.at(current).set(key, value, line_no);
    }
  }

  bool has(const std::string& name) const { return sections_.count(name) != 0; }

  Section& section(const std::string& name) {
    const auto it = sections_.find(name);
    if (it == sections_.end()) throw GuidanceError(ErrorKind::ParseError, "missing section [" + name + "]");
    return it->second;
  }

  void reject_unused() const {
    for (const auto& [name, section] : sections_) section.reject_unused();
  }

 private:
  std::map<std::string, Section> sections_;
};

// ---------------------------------------------------------------------------
// Typed sections
// ---------------------------------------------------------------------------

Traversal parse_traversal(Section& s) {
  const std::string value = s.text("traversal");
  if (value == "ccw") return Traversal::CCW;
  if (value == "cw") return Traversal::CW;
  throw GuidanceError(ErrorKind::ValidationError, s.qualified("traversal") + " must be ccw or cw");
}

PathModel<double> parse_path(Section& s) {
  const std::string type = s.text("type");
  if (type != "line" && type != "circle" && type != "ellipse")
    throw GuidanceError(ErrorKind::ValidationError, s.qualified("type") + " must be line, circle or ellipse");
  if (type == "line") {
    const double x = s.number("anchor_x"), y = s.number("anchor_y");
    const double dir = deg_to_rad(s.number("direction_deg"));
    return StraightLine<double>::make(Vector2d(x, y), unit_from_angle(dir));
  }
  const Vector2d center(s.number("center_x"), s.number("center_y"));
  if (type == "circle") {
    const double radius = s.positive("radius");
    return Circle<double>::make(center, radius, parse_traversal(s));
  }
  const double a = s.positive("semi_major");
  const double b = s.positive("semi_minor");
  if (a < b) throw GuidanceError(ErrorKind::ValidationError, s.qualified("semi_major") + " must be >= semi_minor");
  return Ellipse<double>::make(center, a, b, parse_traversal(s));
}

LookaheadProfile<double> parse_profile(Section& s) {
  const std::string type = s.text("type");
  if (type == "constant") return make_constant_profile(s.positive("L0"));
  if (type == "variable") {
    const double l_min = s.positive("L_min");
    const double l_max = s.positive("L_max");
    const double d_c = s.positive("d_c");
    if (l_max < l_min) throw GuidanceError(ErrorKind::ValidationError, s.qualified("L_max") + " must be >= L_min");
    return make_variable_profile(l_min, l_max, d_c);
  }
  throw GuidanceError(ErrorKind::ValidationError, s.qualified("type") + " must be constant or variable");
}

GuidanceLimits<double> parse_limits(Section& s, bool allow_projection) {
  const double speed = s.positive("speed");
  const double radius = s.positive("R_min");
  std::optional<double> eps;
  if (allow_projection) {
    eps = s.optional_number("eps_proj");
    if (eps && *eps < 0.0) throw GuidanceError(ErrorKind::ValidationError, s.qualified("eps_proj") + " must be >= 0");
  }
  return GuidanceLimits<double>::make(speed, radius, eps);
}

// Degrees text whose parsed value satisfies `reproduces`. Seventeen digits of
// the converted angle can land an ulp off, so nearby doubles are tried too.
template <typename Check>
std::string exact_degrees(double radians, Check reproduces) {
  const double candidate = rad_to_deg(radians);
  double up = candidate, down = candidate;
  for (int i = 0; i < 64; ++i) {
    for (double c : {up, down}) {
      const std::string text = format_exact(c);
      double parsed = 0.0;
      std::from_chars(text.data(), text.data() + text.size(), parsed);
      if (reproduces(parsed)) return text;
    }
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    down = std::nextafter(down, -std::numeric_limits<double>::infinity());
  }
  return format_exact(candidate);
}

std::string exact_degrees(double radians) {
  return exact_degrees(radians, [&](double deg) { return deg_to_rad(deg) == radians; });
}

std::string direction_degrees(const Vector2d& direction) {
  return exact_degrees(std::atan2(direction.y(), direction.x()), [&](double deg) {
    return StraightLine<double>::make(Vector2d::Zero(), unit_from_angle(deg_to_rad(deg))).direction == direction;
  });
}

void write_profile(std::ostream& out, const std::string& name, const LookaheadProfile<double>& profile) {
  out << '[' << name << "]\n";
  if (const auto* c = std::get_if<ConstantLookahead<double>>(&profile)) {
    out << "type = constant\nL0 = " << format_exact(c->length) << '\n';
  } else {
    const auto& v = std::get<VariableLookahead<double>>(profile);
    out << "type = variable\nL_min = " << format_exact(v.min_length) << "\nL_max = " << format_exact(v.max_length)
        << "\nd_c = " << format_exact(v.decay_distance) << '\n';
  }
}

void write_limits(std::ostream& out, const GuidanceLimits<double>& limits) {
  out << "[limits]\nspeed = " << format_exact(limits.speed) << "\nR_min = " << format_exact(limits.min_turn_radius)
      << '\n';
  if (limits.projection_tolerance) out << "eps_proj = " << format_exact(*limits.projection_tolerance) << '\n';
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Document doc(text, {"path", "limits", "profile", "profile2", "init", "sim"});
  Scenario scenario{parse_path(doc.section("path")),
                    parse_limits(doc.section("limits"), true),
                    {parse_profile(doc.section("profile"))},
                    {},
                    {}};
  if (doc.has("profile2")) scenario.profiles.push_back(parse_profile(doc.section("profile2")));

  Section& init = doc.section("init");
  scenario.init = VehicleState{init.number("x"), init.number("y"), wrap_angle(deg_to_rad(init.number("heading_deg")))};

  Section& sim = doc.section("sim");
  scenario.sim.final_time = sim.positive("t_f");
  if (sim.has("dt")) scenario.sim.dt = sim.positive("dt");
  if (sim.has("integrator")) {
    const std::string integrator = sim.text("integrator");
    if (integrator == "rk4") scenario.sim.integrator = Integrator::RK4;
    else if (integrator == "euler") scenario.sim.integrator = Integrator::Euler;
    else throw GuidanceError(ErrorKind::ValidationError, "sim.integrator must be rk4 or euler");
  }
  if (sim.has("settle_band")) scenario.sim.settle_band = sim.positive("settle_band");
  if (scenario.sim.dt > scenario.sim.final_time)
    throw GuidanceError(ErrorKind::ValidationError, "sim.dt must not exceed sim.t_f");
  if (scenario.sim.final_time / scenario.sim.dt > 1e7)
    throw GuidanceError(ErrorKind::ValidationError, "sim.t_f / sim.dt exceeds 1e7 steps");

  doc.reject_unused();
  return scenario;
}

std::string serialize_scenario(const Scenario& scenario) {
  std::ostringstream out;
  out << "[path]\n";
  std::visit(detail::Overloaded{
                 [&](const StraightLine<double>& l) {
                   out << "type = line\nanchor_x = " << format_exact(l.anchor.x())
                       << "\nanchor_y = " << format_exact(l.anchor.y()) << "\ndirection_deg = "
                       << direction_degrees(l.direction) << '\n';
                 },
                 [&](const Circle<double>& c) {
                   out << "type = circle\ncenter_x = " << format_exact(c.center.x())
                       << "\ncenter_y = " << format_exact(c.center.y()) << "\nradius = " << format_exact(c.radius)
                       << "\ntraversal = " << to_string(c.traversal) << '\n';
                 },
                 [&](const Ellipse<double>& e) {
                   out << "type = ellipse\ncenter_x = " << format_exact(e.center.x())
                       << "\ncenter_y = " << format_exact(e.center.y())
                       << "\nsemi_major = " << format_exact(e.semi_major)
                       << "\nsemi_minor = " << format_exact(e.semi_minor)
                       << "\ntraversal = " << to_string(e.traversal) << '\n';
                 }},
             scenario.path);
  out << '\n';
  write_limits(out, scenario.limits);
  for (std::size_t i = 0; i < scenario.profiles.size(); ++i) {
    out << '\n';
    write_profile(out, i == 0 ? "profile" : "profile2", scenario.profiles[i]);
  }
  out << "\n[init]\nx = " << format_exact(scenario.init.x) << "\ny = " << format_exact(scenario.init.y)
      << "\nheading_deg = " << exact_degrees(scenario.init.heading) << "\n\n[sim]\ndt = "
      << format_exact(scenario.sim.dt) << "\nt_f = " << format_exact(scenario.sim.final_time)
      << "\nintegrator = " << to_string(scenario.sim.integrator) << '\n';
  if (scenario.sim.settle_band) out << "settle_band = " << format_exact(*scenario.sim.settle_band) << '\n';
  return out.str();
}

GridSpec EnvelopeConfig::export_grid() const {
  GridSpec g = grid;
  g.n_d = export_n_d;
  g.n_eta = export_n_eta;
  return g;
}

EnvelopeConfig parse_envelope_config(std::string_view text) {
  Document doc(text, {"grid", "limits", "profile", "profile2"});
  Section& g = doc.section("grid");
  GridSpec grid;
  grid.d_min = g.number("d_min");
  grid.d_max = g.number("d_max");
  grid.eta_min = deg_to_rad(g.number("eta_min_deg"));
  grid.eta_max = deg_to_rad(g.number("eta_max_deg"));
  grid.n_d = g.count("n_d");
  grid.n_eta = g.count("n_eta");
  if (g.has("kappa")) grid.curvature = g.number("kappa");
  if (!(grid.d_min < grid.d_max)) throw GuidanceError(ErrorKind::ValidationError, "grid.d_max must exceed grid.d_min");
  if (!(grid.eta_min < grid.eta_max))
    throw GuidanceError(ErrorKind::ValidationError, "grid.eta_max_deg must exceed grid.eta_min_deg");
  if (grid.n_d < 2) throw GuidanceError(ErrorKind::ValidationError, "grid.n_d must be >= 2");
  if (grid.n_eta < 2) throw GuidanceError(ErrorKind::ValidationError, "grid.n_eta must be >= 2");

  EnvelopeConfig config{grid, parse_limits(doc.section("limits"), false), parse_profile(doc.section("profile")),
                        parse_profile(doc.section("profile2"))};
  if (g.has("export_n_d")) config.export_n_d = g.count("export_n_d");
  if (g.has("export_n_eta")) config.export_n_eta = g.count("export_n_eta");
  if (config.export_n_d < 2 || config.export_n_eta < 2)
    throw GuidanceError(ErrorKind::ValidationError, "grid.export_n_d and grid.export_n_eta must be >= 2");
  doc.reject_unused();
  return config;
}

std::string serialize_envelope_config(const EnvelopeConfig& config) {
  std::ostringstream out;
  const GridSpec& g = config.grid;
  out << "[grid]\nd_min = " << format_exact(g.d_min) << "\nd_max = " << format_exact(g.d_max)
      << "\neta_min_deg = " << exact_degrees(g.eta_min)
      << "\neta_max_deg = " << exact_degrees(g.eta_max) << "\nn_d = " << g.n_d
      << "\nn_eta = " << g.n_eta << "\nkappa = " << format_exact(g.curvature)
      << "\nexport_n_d = " << config.export_n_d << "\nexport_n_eta = " << config.export_n_eta << "\n\n";
  write_limits(out, config.limits);
  out << '\n';
  write_profile(out, "profile", config.const_profile);
  out << '\n';
  write_profile(out, "profile2", config.var_profile);
  return out.str();
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"straight_line_table2", "ellipse_table2", "envelope_ratio3"};
  return names;
}

std::string preset_text(std::string_view name) {
  // R_min is not given for the two case studies; 20 m is a small fixed-wing
  // at 12 m/s with roughly 35 degrees of bank.
  if (name == "straight_line_table2") {
    return "# Straight-line following of y = 0\n"
           "[path]\ntype = line\nanchor_x = 0\nanchor_y = 0\ndirection_deg = 0\n\n"
           "[limits]\nspeed = 12\nR_min = 20\n\n"
           "[profile]\ntype = constant\nL0 = 40\n\n"
           "[profile2]\ntype = variable\nL_min = 40\nL_max = 82\nd_c = 32\n\n"
           "[init]\nx = -150\ny = 50\nheading_deg = 90\n\n"
           "[sim]\ndt = 0.01\nt_f = 60\nintegrator = rk4\n";
  }
  if (name == "ellipse_table2") {
    return "# Counter-clockwise ellipse x^2/180^2 + y^2/110^2 = 1\n"
           "[path]\ntype = ellipse\ncenter_x = 0\ncenter_y = 0\nsemi_major = 180\nsemi_minor = 110\ntraversal = ccw\n\n"
           "[limits]\nspeed = 12\nR_min = 20\n\n"
           "[profile]\ntype = constant\nL0 = 22\n\n"
           "[profile2]\ntype = variable\nL_min = 22\nL_max = 100\nd_c = 20\n\n"
           "[init]\nx = 250\ny = 120\nheading_deg = 150\n\n"
           "[sim]\ndt = 0.01\nt_f = 120\nintegrator = rk4\n";
  }
  if (name == "envelope_ratio3") {
    // kappa = 1 / R_min reproduces the reference envelope fractions.
    return "# Envelope study, L_max / L_min = 3\n"
           "[grid]\nd_min = 0\nd_max = 200\neta_min_deg = -180\neta_max_deg = 180\nn_d = 1000\nn_eta = 1000\n"
           "kappa = 0.01\nexport_n_d = 201\nexport_n_eta = 181\n\n"
           "[limits]\nspeed = 50\nR_min = 100\n\n"
           "[profile]\ntype = constant\nL0 = 50\n\n"
           "[profile2]\ntype = variable\nL_min = 50\nL_max = 150\nd_c = 30\n";
  }
  throw GuidanceError(ErrorKind::ParseError, "unknown preset '" + std::string(name) + "'");
}

std::string profile_label(const LookaheadProfile<double>& profile) {
  return std::holds_alternative<ConstantLookahead<double>>(profile) ? "constant" : "variable";
}

}  // namespace l0guide
