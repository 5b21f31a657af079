// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "pdls/error.hpp"

namespace pdls::cli {
namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string fmt(double v, int decimals) {
  if (!std::isfinite(v)) return format_number(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

MetricStats stats(const std::vector<double>& values) {
  MetricStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  if (values.size() > 1 && std::isfinite(s.mean)) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (values.size() - 1));
  }
  return s;
}

const char* const kMetricsHeader =
    "task,seed,input,config_hash,method,mse,psnr,ssim,class_acc,degraded_psnr";

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) throw IoError("bad number '" + text + "'");
  return v;
}

void write_metrics_header(std::ostream& os) { os << kMetricsHeader << '\n'; }

void write_metrics_row(std::ostream& os, const MetricsRow& r) {
  os << r.task << ',' << r.seed << ',' << r.input << ',' << r.config_hash << ',' << r.method << ','
     << format_number(r.mse) << ',' << format_number(r.psnr) << ','
     << (r.ssim ? format_number(*r.ssim) : "") << ','
     << (r.class_acc ? std::to_string(*r.class_acc) : "") << ','
     << (r.degraded_psnr ? format_number(*r.degraded_psnr) : "") << '\n';
}

std::vector<MetricsRow> read_metrics_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line) || split_fields(line, ',') != split_fields(kMetricsHeader, ',')) {
    throw IoError(name + ": missing or unexpected metrics header");
  }
  std::vector<MetricsRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_fields(line, ',');
    if (f.size() != 10) {
      throw IoError(name + ":" + std::to_string(lineno) + ": expected 10 fields");
    }
    try {
      MetricsRow r;
      r.task = f[0];
      r.seed = std::stoull(f[1]);
      r.input = f[2];
      r.config_hash = f[3];
      r.method = f[4];
      r.mse = parse_number(f[5]);
      r.psnr = parse_number(f[6]);
      if (!f[7].empty()) r.ssim = parse_number(f[7]);
      if (!f[8].empty()) r.class_acc = std::stoi(f[8]);
      if (!f[9].empty()) r.degraded_psnr = parse_number(f[9]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw IoError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<MetricsRow> read_metrics_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_metrics_csv(in, path);
}

void write_diagnostics_csv(std::ostream& os, const std::vector<SteeringStep>& steps) {
  os << "step,t,eta,target_node,dist_to_target,dist_after\n";
  for (const auto& s : steps) {
    os << s.step << ',' << format_number(s.t) << ',' << format_number(s.eta) << ','
       << s.target_node << ',' << format_number(s.dist_to_target) << ','
       << format_number(s.dist_after) << '\n';
  }
}

void write_toy_paths_csv(std::ostream& os, const RestoreResult& result) {
  const std::size_t d = result.output.size();
  os << "path,t";
  for (std::size_t j = 0; j < d; ++j) os << ",x_" << j;
  os << '\n';
  auto emit = [&](const char* name, const Trajectory& traj) {
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      os << name << ',' << format_number(traj.grid.node(k));
      for (double v : traj.states[k]) os << ',' << format_number(v);
      os << '\n';
    }
  };
  emit("structural", result.paths.structural);
  emit("semantic", result.paths.semantic);
  emit("steered", result.generation);
}

ToyPaths read_toy_paths_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("path,t,x_0,x_1", 0) != 0) {
    throw IoError(name + ": expected a 2-D path CSV");
  }
  ToyPaths paths;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_fields(line, ',');
    if (f.size() != 4) throw IoError(name + ":" + std::to_string(lineno) + ": expected 4 fields");
    std::vector<double> p{parse_number(f[2]), parse_number(f[3])};
    if (f[0] == "structural") {
      paths.structural.push_back(std::move(p));
    } else if (f[0] == "semantic") {
      paths.semantic.push_back(std::move(p));
    } else if (f[0] == "steered") {
      paths.steered.push_back(std::move(p));
    } else {
      throw IoError(name + ":" + std::to_string(lineno) + ": unknown path '" + f[0] + "'");
    }
  }
  return paths;
}

std::vector<AggregateRow> aggregate(const std::vector<MetricsRow>& rows) {
  struct Acc {
    std::vector<double> psnr, ssim, acc;
  };
  std::vector<AggregateRow> table;
  std::vector<Acc> accs;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.task, r.method, r.config_hash);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, table.size()).first;
      table.push_back(AggregateRow{r.task, r.method, r.config_hash, 0, {}, {}, {}});
      accs.emplace_back();
    }
    auto& acc = accs[it->second];
    ++table[it->second].n;
    acc.psnr.push_back(r.psnr);
    if (r.ssim) acc.ssim.push_back(*r.ssim);
    if (r.class_acc) acc.acc.push_back(*r.class_acc);
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i].psnr = stats(accs[i].psnr);
    table[i].ssim = stats(accs[i].ssim);
    table[i].class_acc = stats(accs[i].acc);
  }
  return table;
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& table) {
  os << "task,method,config_hash,n,psnr_mean,psnr_std,ssim_mean,ssim_std,class_acc_mean,"
        "class_acc_std\n";
  auto cell = [](const MetricStats& s, double v) {
    return s.count == 0 ? std::string() : format_number(v);
  };
  for (const auto& r : table) {
    os << r.task << ',' << r.method << ',' << r.config_hash << ',' << r.n << ','
       << cell(r.psnr, r.psnr.mean) << ',' << cell(r.psnr, r.psnr.std) << ','
       << cell(r.ssim, r.ssim.mean) << ',' << cell(r.ssim, r.ssim.std) << ','
       << cell(r.class_acc, r.class_acc.mean) << ',' << cell(r.class_acc, r.class_acc.std)
       << '\n';
  }
}

void print_aggregate(std::ostream& os, const std::vector<AggregateRow>& table) {
  auto cell = [](const MetricStats& s, int decimals) {
    if (s.count == 0) return std::string("-");
    return fmt(s.mean, decimals) + " +- " + fmt(s.std, decimals);
  };
  os << std::left << std::setw(8) << "task" << std::setw(34) << "method" << std::setw(18)
     << "config" << std::setw(5) << "n" << std::setw(20) << "psnr [dB]" << std::setw(20)
     << "ssim" << "class_acc\n";
  for (const auto& r : table) {
    os << std::left << std::setw(8) << r.task << std::setw(34) << r.method << std::setw(18)
       << r.config_hash << std::setw(5) << r.n << std::setw(20) << cell(r.psnr, 2)
       << std::setw(20) << cell(r.ssim, 4) << cell(r.class_acc, 3) << '\n';
  }
}

void write_toy_svg(std::ostream& os, const ToyPaths& paths, const std::vector<Vec>& means) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = hi_x;
  auto extend = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const auto* path : {&paths.structural, &paths.semantic, &paths.steered}) {
    for (const auto& p : *path) extend(p[0], p[1]);
  }
  for (const auto& m : means) {
    if (m.size() >= 2) extend(m[0], m[1]);
  }
  if (!std::isfinite(lo_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9}) * 1.1;
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  const double size = 480.0, pad = 20.0;
  auto px = [&](double x) { return pad + (x - cx + span / 2) / span * size; };
  auto py = [&](double y) { return pad + (cy + span / 2 - y) / span * size; };

  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\""
     << size + 2 * pad << "\" viewBox=\"0 0 " << size + 2 * pad << ' ' << size + 2 * pad
     << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Component means as crosses so that circles stay reserved for path nodes.
  for (const auto& m : means) {
    if (m.size() < 2) continue;
    const double x = px(m[0]), y = py(m[1]);
    os << "<path d=\"M" << x - 5 << ' ' << y << " H" << x + 5 << " M" << x << ' ' << y - 5
       << " V" << y + 5 << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  struct Style {
    const char* name;
    const char* color;
    const std::vector<std::vector<double>>* pts;
  };
  const Style styles[] = {{"structural", "#1f77b4", &paths.structural},
                          {"semantic", "#2ca02c", &paths.semantic},
                          {"steered", "#d62728", &paths.steered}};
  for (const auto& s : styles) {
    os << "<g id=\"" << s.name << "\">\n<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.pts->size(); ++i) {
      os << (i ? " " : "") << px((*s.pts)[i][0]) << ',' << py((*s.pts)[i][1]);
    }
    os << "\"/>\n";
    for (const auto& p : *s.pts) {
      os << "<circle cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1]) << "\" r=\"2\" fill=\""
         << s.color << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
}

ImageGrid image_strip(const std::vector<std::vector<ImageGrid>>& rows) {
  constexpr std::size_t gutter = 2;
  std::size_t width = 0, height = 0;
  for (const auto& row : rows) {
    std::size_t w = 0, h = 0;
    for (const auto& img : row) {
      w += img.width() + gutter;
      h = std::max(h, img.height());
    }
    width = std::max(width, w + gutter);
    height += h + gutter;
  }
  if (rows.empty()) return ImageGrid(1, 1, 1.0);
  ImageGrid strip(width, height + gutter, 1.0);
  std::size_t y0 = gutter;
  for (const auto& row : rows) {
    std::size_t x0 = gutter, h = 0;
    for (const auto& img : row) {
      for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) strip.set(x0 + x, y0 + y, img.at(x, y));
      }
      x0 += img.width() + gutter;
      h = std::max(h, img.height());
    }
    y0 += h + gutter;
  }
  return strip;
}

void write_manifest(std::ostream& os, const Manifest& m) {
  os << "format=pdls-manifest-1\n"
     << "task=" << m.task << "\ndataset=" << m.dataset << "\nsigma_y=" << format_number(m.sigma_y)
     << "\nwidth=" << m.width << "\nheight=" << m.height << '\n';
  for (const auto& e : m.entries) {
    os << "entry=" << e.input << '\t' << e.label << '\t' << e.seed << '\t' << e.clean << '\t'
       << e.observed << '\t' << e.op << '\n';
  }
}

Manifest read_manifest(std::istream& is, const std::string& name) {
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  bool format_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto bad = [&](const std::string& what) {
      return IoError(name + ":" + std::to_string(lineno) + ": " + what);
    };
    if (eq == std::string::npos) throw bad("expected key=value");
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    try {
      if (key == "format") {
        if (value != "pdls-manifest-1") throw bad("unsupported manifest format '" + value + "'");
        format_seen = true;
      } else if (key == "task") {
        m.task = value;
      } else if (key == "dataset") {
        m.dataset = value;
      } else if (key == "sigma_y") {
        m.sigma_y = parse_number(value);
      } else if (key == "width") {
        m.width = std::stoull(value);
      } else if (key == "height") {
        m.height = std::stoull(value);
      } else if (key == "entry") {
        const auto f = split_fields(value, '\t');
        if (f.size() != 6) throw bad("entry needs 6 tab-separated fields");
        m.entries.push_back(ManifestEntry{f[0], f[1], std::stoull(f[2]), f[3], f[4], f[5]});
      } else {
        throw bad("unknown manifest key '" + key + "'");
      }
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw bad(e.what());
    }
  }
  if (!format_seen) throw IoError(name + ": not a pdls manifest");
  if (m.width == 0 || m.height == 0) throw IoError(name + ": missing image size");
  return m;
}

}  // namespace pdls::cli
