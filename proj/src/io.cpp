#include "linkpack/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace linkpack::io {

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Json point(const Point3& p) { return Json::array({p.x(), p.y(), p.z()}); }

std::string big_json(const BigInt& x) { return x.str(); }

}  // namespace

std::string to_bits(const Z2Vector& v) {
  std::string s(v.size(), '0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) s[i] = '1';
  }
  return s;
}

Z2Vector from_bits(const std::string& s) {
  Z2Vector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v.set(i);
    } else if (s[i] != '0') {
      throw PreconditionError("bit string may only contain 0 and 1");
    }
  }
  return v;
}

Json to_json(const PLLink& link) {
  Json j;
  j["name"] = link.name();
  j["components"] = Json::array();
  for (const auto& c : link.components()) {
    Json verts = Json::array();
    for (const auto& v : c.vertices()) verts.push_back(point(v));
    j["components"].push_back({{"label", c.label()}, {"vertices", std::move(verts)}});
  }
  j["constraints"] = Json::array();
  for (const auto& k : link.constraints()) {
    j["constraints"].push_back({{"a", k.a}, {"b", k.b}, {"min_dist", k.min_dist}});
  }
  return j;
}

PLLink link_from_json(const Json& j) {
  try {
    std::vector<PLCurve> comps;
    for (const auto& c : j.at("components")) {
      std::vector<Point3> verts;
      for (const auto& v : c.at("vertices")) {
        if (v.size() != 3) throw PreconditionError("link JSON: vertex needs 3 coordinates");
        verts.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
      }
      comps.emplace_back(c.at("label").get<std::string>(), std::move(verts));
    }
    std::vector<DistanceConstraint> cons;
    if (j.contains("constraints")) {
      for (const auto& k : j.at("constraints")) {
        cons.push_back({k.at("a").get<std::string>(), k.at("b").get<std::string>(),
                        k.at("min_dist").get<double>()});
      }
    }
    return PLLink(j.value("name", std::string("link")), std::move(comps), std::move(cons));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("link JSON: ") + e.what());
  }
}

Json to_json(const Certificate& c) {
  Json rows = Json::array();
  for (const auto& r : c.L.rows) rows.push_back(to_bits(r));
  return {{"fingerprint", hex64(c.fingerprint)},
          {"epsilon", c.epsilon},
          {"n_side", c.n_side},
          {"d", c.L.d},
          {"e", c.L.e},
          {"x", to_bits(c.x)},
          {"y", to_bits(c.y)},
          {"L", std::move(rows)},
          {"eq1", c.eq1 ? 1 : 0}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.fingerprint = std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    c.epsilon = j.at("epsilon").get<double>();
    c.n_side = j.at("n_side").get<int>();
    c.L.d = j.at("d").get<int>();
    c.L.e = j.at("e").get<int>();
    c.x = from_bits(j.at("x").get<std::string>());
    c.y = from_bits(j.at("y").get<std::string>());
    for (const auto& r : j.at("L")) c.L.rows.push_back(from_bits(r.get<std::string>()));
    c.eq1 = j.at("eq1").get<int>() != 0;
    if (static_cast<int>(c.x.size()) != c.L.d || static_cast<int>(c.y.size()) != c.L.e ||
        static_cast<int>(c.L.rows.size()) != c.L.d) {
      throw PreconditionError("certificate JSON: dimensions disagree");
    }
    for (const auto& r : c.L.rows) {
      if (static_cast<int>(r.size()) != c.L.e) throw PreconditionError("certificate JSON: ragged L");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("certificate JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw PreconditionError("certificate JSON: bad fingerprint");
  }
}

Json to_json(const Coloring& c) {
  const Grid& g = c.grid();
  Json runs = Json::array();
  std::int64_t pos = 0;
  auto emit = [&](int color, std::int64_t length) {
    if (length <= 0) return;
    if (!runs.empty() && runs.back()[0].get<int>() == color) {
      runs.back()[1] = runs.back()[1].get<std::int64_t>() + length;
    } else {
      runs.push_back(Json::array({color, length}));
    }
  };
  for (const auto& [cell, color] : c.colored()) {
    emit(0, cell - pos);
    emit(color, 1);
    pos = cell + 1;
  }
  emit(0, g.cell_count() - pos);
  return {{"dims", Json::array({g.n_side, g.n_side, g.n_side})},
          {"h", g.h},
          {"epsilon", g.epsilon},
          {"palette", c.palette()},
          {"runs", std::move(runs)}};
}

Coloring coloring_from_json(const Json& j) {
  try {
    Grid g;
    g.n_side = j.at("dims").at(0).get<int>();
    g.h = j.at("h").get<double>();
    g.epsilon = j.at("epsilon").get<double>();
    auto palette = j.at("palette").get<std::vector<std::string>>();
    std::vector<std::pair<std::int64_t, int>> colored;
    std::int64_t pos = 0;
    for (const auto& run : j.at("runs")) {
      const int color = run.at(0).get<int>();
      const std::int64_t length = run.at(1).get<std::int64_t>();
      if (length < 0 || color < 0 || color >= static_cast<int>(palette.size())) {
        throw PreconditionError("colouring JSON: bad run");
      }
      if (color != 0) {
        for (std::int64_t i = 0; i < length; ++i) colored.emplace_back(pos + i, color);
      }
      pos += length;
    }
    if (pos != g.cell_count()) throw PreconditionError("colouring JSON: runs do not cover the grid");
    return Coloring(g, std::move(palette), std::move(colored));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("colouring JSON: ") + e.what());
  }
}

Json to_json(const Packing& p) {
  Json gens = Json::array();
  for (const auto& g : p.generations) {
    Json links = Json::array();
    for (const auto& l : g.links) links.push_back(to_json(l));
    gens.push_back({{"index", g.index},
                    {"radius", g.radius},
                    {"rho", g.rho},
                    {"pitch", g.pitch},
                    {"count", g.count},
                    {"links", std::move(links)}});
  }
  return {{"epsilon", p.epsilon}, {"total_count", p.total_count}, {"generations", std::move(gens)}};
}

Packing packing_from_json(const Json& j) {
  try {
    Packing p;
    p.epsilon = j.at("epsilon").get<double>();
    for (const auto& gj : j.at("generations")) {
      Generation g;
      g.index = gj.at("index").get<int>();
      g.radius = gj.at("radius").get<double>();
      g.rho = gj.at("rho").get<double>();
      g.pitch = gj.at("pitch").get<double>();
      g.count = gj.at("count").get<std::int64_t>();
      for (const auto& l : gj.at("links")) g.links.push_back(link_from_json(l));
      p.generations.push_back(std::move(g));
    }
    p.total_count = j.at("total_count").get<std::int64_t>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("packing JSON: ") + e.what());
  }
}

Json to_json(const PackingReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"generation", p.generation},
                     {"index", p.index},
                     {"min_distance", p.min_distance},
                     {"ok", p.ok}});
  }
  Json j{{"pass", r.pass}, {"min_pair_distance", r.min_pair_distance}, {"pairs", std::move(pairs)}};
  if (r.witness) {
    Json w{{"generation", r.witness->generation}, {"index", r.witness->index},
           {"reason", r.witness->reason}};
    if (r.witness->other) w["other"] = *r.witness->other;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const BoundReport& r) {
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return {{"name", r.name},
          {"inputs", std::move(inputs)},
          {"exact", r.exact ? Json(big_json(*r.exact)) : Json(nullptr)},
          {"log_value", r.log_value}};
}

Json to_json(const MuResult& r) {
  Json lower = Json::object();
  for (const auto& [k, v] : r.lower_order) lower[k] = big_json(v);
  return {{"sequence", r.sequence},
          {"coefficient", big_json(r.coefficient)},
          {"modulus", r.modulus ? Json(*r.modulus) : Json(nullptr)},
          {"residue", r.residue ? Json(*r.residue) : Json(nullptr)},
          {"indeterminate", r.indeterminate},
          {"indeterminacy", big_json(r.indeterminacy)},
          {"lower_order", std::move(lower)}};
}

Json to_json(const DensityFit& f) {
  Json samples = Json::array();
  for (const auto& s : f.samples) samples.push_back({{"epsilon", s.epsilon}, {"count", s.count}});
  return {{"samples", std::move(samples)}, {"exponent", f.exponent}, {"r2", f.r2}};
}

void write_density_csv(std::ostream& out, const std::vector<Packing>& packings) {
  out << "epsilon,generation,count,min_pair_distance\n";
  out << std::setprecision(12);
  for (const auto& p : packings) {
    const PackingReport report = verify_packing(p, p.epsilon);
    for (const auto& g : p.generations) {
      double min_dist = std::numeric_limits<double>::infinity();
      for (const auto& pr : report.pairs) {
        if (pr.generation == g.index) min_dist = std::min(min_dist, pr.min_distance);
      }
      out << p.epsilon << ',' << g.index << ',' << g.count << ',' << min_dist << '\n';
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

}  // namespace linkpack::io
