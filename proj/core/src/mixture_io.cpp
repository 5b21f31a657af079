// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/mixture_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pdls/error.hpp"

namespace pdls {
namespace {

double to_double(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) throw IoError(where + ": bad number '" + text + "'");
  return v;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GaussianMixture read_mixture(std::istream& in, const std::string& name) {
  std::vector<MixtureComponent> components;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string word;
    if (!(tokens >> word)) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (word != "component") throw IoError(where + ": expected 'component'");

    std::map<std::string, std::string> fields;
    while (tokens >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0) throw IoError(where + ": expected key=value");
      const std::string key = word.substr(0, eq);
      if (key != "weight" && key != "variance" && key != "label" && key != "mean") {
        throw IoError(where + ": unknown field '" + key + "'");
      }
      if (!fields.emplace(key, word.substr(eq + 1)).second) {
        throw IoError(where + ": duplicate field '" + key + "'");
      }
    }
    for (const char* required : {"weight", "variance", "label", "mean"}) {
      if (!fields.count(required)) throw IoError(where + ": missing field '" + required + "'");
    }

    MixtureComponent c;
    c.weight = to_double(fields["weight"], where);
    c.variance = to_double(fields["variance"], where);
    c.label = fields["label"];
    std::istringstream coords(fields["mean"]);
    std::string coord;
    while (std::getline(coords, coord, ',')) c.mean.push_back(to_double(coord, where));
    if (c.mean.empty()) throw IoError(where + ": empty mean");
    components.push_back(std::move(c));
  }
  if (components.empty()) throw IoError(name + ": no components");
  return GaussianMixture(std::move(components));
}

GaussianMixture read_mixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mixture " + path);
  return read_mixture(in, path);
}

void write_mixture(std::ostream& out, const GaussianMixture& mixture) {
  for (const auto& c : mixture.components()) {
    if (c.label.find_first_of(" \t\r\n#") != std::string::npos) {
      throw InvalidArgument("label '" + c.label + "' cannot be written to a mixture file");
    }
    out << "component weight=" << g17(c.weight) << " variance=" << g17(c.variance)
        << " label=" << c.label << " mean=";
    for (std::size_t j = 0; j < c.mean.size(); ++j) out << (j ? "," : "") << g17(c.mean[j]);
    out << '\n';
  }
}

}  // namespace pdls
