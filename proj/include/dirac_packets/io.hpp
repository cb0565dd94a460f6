#pragma once

// CSV / JSON / SVG writers. Every file carries the flattened run configuration:
// '#'-prefixed lines in CSV, a "config" object in JSON, <metadata> in SVG.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "experiments.hpp"
#include "observables.hpp"
#include "oracle.hpp"
#include "packet.hpp"

namespace dirac_packets::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline void write_csv_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

inline nlohmann::ordered_json metadata_json(const Metadata& meta) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

// Radial profiles: columns r, a, b, a_E, b_E.
inline void write_profiles_csv(std::ostream& os, const RadialProfiles& prof, const Metadata& meta) {
  write_csv_metadata(os, meta);
  os << "# n=" << format_number(prof.n()) << " r_max=" << format_number(prof.r_max())
     << " nodes=" << prof.size() << " grid=sinh scale=" << format_number(prof.scale())
     << " interpolation=cubic-hermite\n";
  os << "r,a,b,a_E,b_E\n";
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const auto& s = prof.node(i);
    os << format_number(prof.radius(i)) << ',' << format_number(s.a) << ',' << format_number(s.b) << ','
       << format_number(s.a_e) << ',' << format_number(s.b_e) << '\n';
  }
}

inline const Estimate& field(const ObservableSet& o, const std::string& key) {
  if (key == "total_charge") return o.total_charge;
  if (key == "mean_square_radius") return o.mean_square_radius;
  if (key == "mu_total") return o.mu_total;
  if (key == "mu_spin") return o.mu_spin;
  if (key == "L_total") return o.L_total;
  if (key == "L_spin") return o.L_spin;
  if (key == "energy_total") return o.energy_total;
  if (key == "xQx") return o.xQx;
  if (key == "xPx") return o.xPx;
  throw DomainError("unknown observable '" + key + "'");
}

// Flat object: n, then <key> and <key>_err for every computed observable.
inline nlohmann::ordered_json observables_json(const ObservableSet& o) {
  nlohmann::ordered_json j;
  j["n"] = o.n;
  for (const auto& key : observable_keys()) {
    if (!o.has(key)) continue;
    j[key] = field(o, key).value;
    j[key + "_err"] = field(o, key).error;
  }
  return j;
}

inline std::vector<std::string> present_keys(const std::vector<SweepRow>& rows) {
  std::vector<std::string> keys;
  for (const auto& key : observable_keys())
    for (const auto& r : rows)
      if (r.values.has(key)) {
        keys.push_back(key);
        break;
      }
  return keys;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const Metadata& meta) {
  write_csv_metadata(os, meta);
  const auto keys = present_keys(rows);
  os << 'n';
  for (const auto& k : keys) os << ',' << k << ',' << k << "_err";
  os << ",status\n";
  for (const auto& r : rows) {
    os << format_number(r.values.n);
    for (const auto& k : keys) {
      if (r.ok() && r.values.has(k))
        os << ',' << format_number(field(r.values, k).value) << ',' << format_number(field(r.values, k).error);
      else
        os << ",,";
    }
    os << ',' << (r.ok() ? "ok" : "failed") << '\n';
  }
}

inline nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, const Metadata& meta) {
  nlohmann::ordered_json j;
  j["config"] = metadata_json(meta);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    auto row = observables_json(r.values);
    row["status"] = r.ok() ? "ok" : "failed";
    if (!r.ok()) row["error"] = r.error;
    j["rows"].push_back(row);
  }
  return j;
}

inline void write_slice_csv(std::ostream& os, const SliceTable& t, const Metadata& meta) {
  write_csv_metadata(os, meta);
  os << "# n=" << format_number(t.n) << " peak_J=" << format_number(t.peak_current)
     << " compton_radius=" << format_number(t.compton_radius) << '\n';
  os << "x,y,J_x,J_y,|J|,rho_q\n";
  for (const auto& p : t.points)
    os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.jx) << ','
       << format_number(p.jy) << ',' << format_number(p.j_abs) << ',' << format_number(p.rho_q) << '\n';
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Quiver plot of the slice. Arrows are normalised to the panel's peak |J|
// (longest arrow spans 90% of a grid cell); the dashed circle marks the Compton radius.
inline void write_slice_svg(std::ostream& os, const SliceTable& t, const Metadata& meta) {
  const double size = 600.0, margin = 40.0;
  const double total = size + 2.0 * margin;
  const double px_per_unit = size / (2.0 * t.half_extent);
  const double cell = size / std::max(1, t.resolution - 1);
  auto sx = [&](double x) { return margin + (x + t.half_extent) * px_per_unit; };
  auto sy = [&](double y) { return margin + (t.half_extent - y) * px_per_unit; };
  auto f = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(total) << "\" height=\"" << f(total + 30.0)
     << "\" viewBox=\"0 0 " << f(total) << ' ' << f(total + 30.0) << "\">\n";
  nlohmann::ordered_json m = metadata_json(meta);
  m["n"] = t.n;
  m["peak_J"] = t.peak_current;
  m["arrow_scale"] = "per-panel, normalised to peak |J|";
  os << "<metadata>" << xml_escape(m.dump()) << "</metadata>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << f(total) << "\" height=\"" << f(total + 30.0)
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << f(margin) << "\" y=\"" << f(margin) << "\" width=\"" << f(size) << "\" height=\""
     << f(size) << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  os << "<circle class=\"compton\" cx=\"" << f(sx(0.0)) << "\" cy=\"" << f(sy(0.0)) << "\" r=\""
     << f(t.compton_radius * px_per_unit)
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  os << "<g stroke=\"#1f4e9c\" fill=\"#1f4e9c\" stroke-width=\"1.2\">\n";
  for (const auto& p : t.points) {
    if (t.peak_current <= 0.0) break;
    const double len = 0.9 * cell * p.j_abs / t.peak_current;
    if (len < 0.5) continue;
    const double ux = p.jx / p.j_abs, uy = -p.jy / p.j_abs;  // screen y points down
    const double x0 = sx(p.x) - 0.5 * len * ux, y0 = sy(p.y) - 0.5 * len * uy;
    const double x1 = sx(p.x) + 0.5 * len * ux, y1 = sy(p.y) + 0.5 * len * uy;
    const double head = std::min(0.35 * len, 6.0);
    const double bx = x1 - head * ux, by = y1 - head * uy;
    os << "<line x1=\"" << f(x0) << "\" y1=\"" << f(y0) << "\" x2=\"" << f(bx) << "\" y2=\"" << f(by) << "\"/>";
    os << "<polygon points=\"" << f(x1) << ',' << f(y1) << ' ' << f(bx - 0.5 * head * uy) << ','
       << f(by + 0.5 * head * ux) << ' ' << f(bx + 0.5 * head * uy) << ',' << f(by - 0.5 * head * ux)
       << "\"/>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << f(margin) << "\" y=\"" << f(total + 15.0)
     << "\" font-family=\"sans-serif\" font-size=\"13\">n = " << format_number(t.n)
     << ", peak |J| = " << format_number(t.peak_current)
     << " e c / (hbar/mc)^3, dashed circle: Compton radius</text>\n";
  os << "</svg>\n";
}

inline nlohmann::ordered_json report_json(const oracle::OracleReport& r) {
  nlohmann::ordered_json j;
  j["quantity"] = r.quantity;
  j["primary"] = r.primary;
  j["oracle"] = r.oracle;
  j["absolute_deviation"] = r.absolute_deviation();
  j["relative_deviation"] = r.relative_deviation();
  j["criterion"] = r.criterion;
  j["tolerance"] = r.tolerance;
  j["oracle_error"] = r.oracle_error;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  return j;
}

}  // namespace dirac_packets::io
