#include "ghkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ghkit/error.hpp"
#include "json.hpp"

namespace ghkit::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

/// Runs a field-extraction lambda, turning json type errors into parse errors.
template <typename Fn>
auto extract(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::string dump(const json& j) { return j.dump(); }

json point_json(PlanePoint p) { return json::array({round12(p.t), round12(p.phi)}); }

PlanePoint point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::parse_error, "a point is [t, phi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json pairs_json(std::span<const IndexPair> pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back(json::array({p.left, p.right}));
  return out;
}

std::vector<IndexPair> pairs_from(const json& j) {
  std::vector<IndexPair> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::parse_error, "a pair is [i, j]");
    pairs.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>()});
  }
  return pairs;
}

json pl_json(const PLCorrespondence& p) {
  json segs = json::array();
  for (const auto& s : p.segments()) {
    segs.push_back({{"from", point_json(s.from)}, {"to", point_json(s.to)}, {"label", s.label}});
  }
  return {{"lambda", round12(p.lambda())}, {"segments", std::move(segs)}};
}

PLCorrespondence pl_from(const json& j) {
  std::vector<PlaneSegment> segs;
  for (const auto& s : j.at("segments")) {
    segs.push_back({point_from(s.at("from")), point_from(s.at("to")), s.value("label", std::string{})});
  }
  return PLCorrespondence(j.at("lambda").get<double>(), std::move(segs));
}

json correspondence_json(const Correspondence& r) {
  return {{"left_size", r.left_size()}, {"right_size", r.right_size()}, {"pairs", pairs_json(r.pairs())}};
}

json witness_json(const LipschitzWitness& w) {
  json values = json::array();
  for (double v : w.values) values.push_back(round12(v));
  return {{"values", std::move(values)}, {"objective", round12(w.objective)}};
}

Regime regime_from(const std::string& s) {
  for (auto r : {Regime::A, Regime::B1, Regime::B2, Regime::C1, Regime::C2}) {
    if (s == to_string(r)) return r;
  }
  throw Error(Errc::parse_error, "unknown regime " + s);
}

}  // namespace

double round12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << text;
}

std::string space_to_json(const FiniteMetricSpace& x) {
  json dist = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (double d : x.row(i)) row.push_back(round12(d));
    dist.push_back(std::move(row));
  }
  return dump({{"labels", x.labels()}, {"dist", std::move(dist)}});
}

FiniteMetricSpace space_from_json(std::string_view text) {
  const auto j = parse(text);
  auto [matrix, labels] = extract([&] {
    auto m = j.at("dist").get<std::vector<std::vector<double>>>();
    auto l = j.contains("labels") ? j.at("labels").get<std::vector<std::string>>() : std::vector<std::string>{};
    return std::pair{std::move(m), std::move(l)};
  });
  return validate_metric(matrix, std::move(labels));
}

std::string space_to_csv(const FiniteMetricSpace& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += x.label(i);
  }
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.12g", x(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

FiniteMetricSpace space_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      cells.push_back(cell);
    }
    return cells;
  };
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "empty CSV");
  auto labels = split(line);
  std::vector<std::vector<double>> matrix;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') throw Error(Errc::parse_error, "not a number: '" + cell + "'");
      row.push_back(v);
    }
    matrix.push_back(std::move(row));
  }
  return validate_metric(matrix, std::move(labels));
}

FiniteMetricSpace load_space(const std::string& path) {
  const auto text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return space_from_csv(text);
  return space_from_json(text);
}

std::string graph_to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.u, e.v, round12(e.length)}));
  return dump({{"vertices", g.vertices}, {"edges", std::move(edges)}});
}

MetricGraph graph_from_json(std::string_view text) {
  const auto j = parse(text);
  return extract([&] {
    MetricGraph g;
    g.vertices = j.at("vertices").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(Errc::parse_error, "an edge is [u, v, length]");
      g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    }
    return g;
  });
}

std::string correspondence_to_json(const Correspondence& r) { return dump(correspondence_json(r)); }

Correspondence correspondence_from_json(std::string_view text, std::size_t left_size, std::size_t right_size) {
  const auto j = parse(text);
  auto pairs = extract([&] { return pairs_from(j.at("pairs")); });
  if (left_size == 0) left_size = extract([&] { return j.at("left_size").get<std::size_t>(); });
  if (right_size == 0) right_size = extract([&] { return j.at("right_size").get<std::size_t>(); });
  return Correspondence(left_size, right_size, std::move(pairs));
}

std::string pl_to_json(const PLCorrespondence& p) { return dump(pl_json(p)); }

PLCorrespondence pl_from_json(std::string_view text) {
  const auto j = parse(text);
  return extract([&] { return pl_from(j); });
}

std::string witness_to_json(const LipschitzWitness& w) { return dump(witness_json(w)); }

LipschitzWitness witness_from_json(std::string_view text) {
  const auto j = parse(text);
  return extract([&] {
    return LipschitzWitness{j.at("values").get<std::vector<double>>(), j.at("objective").get<double>()};
  });
}

std::string bound_to_json_line(const BoundRecord& r) {
  json params = json::object();
  for (const auto& p : r.params) params[p.name] = round12(p.value);
  json j = {{"kind", to_string(r.kind)},
            {"value", round12(r.value)},
            {"source", r.source},
            {"params", std::move(params)},
            {"vacuous", r.vacuous},
            {"continuous_hypothesis", r.continuous_hypothesis},
            {"slack", round12(r.slack)}};
  std::visit(
      [&](const auto& cert) {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, Correspondence>) {
          j["certificate"] = {{"type", "correspondence"}, {"relation", correspondence_json(cert)}};
        } else if constexpr (std::is_same_v<T, LipschitzWitness>) {
          j["certificate"] = {{"type", "witness"}, {"witness", witness_json(cert)}};
        } else if constexpr (std::is_same_v<T, ImageCertificate>) {
          j["certificate"] = {{"type", "lipschitz_image"},
                              {"witness", witness_json(cert.witness)},
                              {"relation", correspondence_json(cert.graph)}};
        } else if constexpr (std::is_same_v<T, PLCorrespondence>) {
          j["certificate"] = {{"type", "pl"}, {"relation", pl_json(cert)}};
        } else {
          j["certificate"] = nullptr;
        }
      },
      r.certificate);
  return dump(j);
}

std::string exact_to_json(const ExactResult& r) {
  return dump({{"value", round12(r.value)},
               {"pairs", pairs_json(r.relation.pairs())},
               {"status", r.status == SearchStatus::optimal ? "optimal" : "upper"},
               {"nodes", r.nodes}});
}

std::string certificate_to_json(const SegmentCircleCertificate& c) {
  json rel;
  if (const auto* pl = std::get_if<PLCorrespondence>(&c.relation)) {
    rel = pl_json(*pl);
    rel["type"] = "pl";
  } else {
    rel = correspondence_json(std::get<Correspondence>(c.relation));
    rel["type"] = "finite";
  }
  // Derived fields are computed from the rounded primaries so a reloaded
  // certificate re-emits the same bytes.
  const double lambda = round12(c.lambda);
  const double measured = round12(c.measured);
  return dump({{"lambda", lambda},
               {"regime", to_string(c.regime)},
               {"construction", c.construction},
               {"formula", round12(gh_formula(lambda))},
               {"measured", measured},
               {"measured_half", round12(measured / 2.0)},
               {"error_bound", round12(c.error_bound)},
               {"slack", round12(c.slack)},
               {"grids",
                {{"n_circle", c.grids.n_circle}, {"m_grid", c.grids.m_grid}, {"pl_step", round12(c.grids.pl_step)}}},
               {"relation", std::move(rel)}});
}

SegmentCircleCertificate certificate_from_json(std::string_view text) {
  const auto j = parse(text);
  return extract([&] {
    SegmentCircleCertificate c;
    c.lambda = j.at("lambda").get<double>();
    c.regime = regime_from(j.at("regime").get<std::string>());
    c.construction = j.at("construction").get<std::string>();
    c.measured = j.at("measured").get<double>();
    c.error_bound = j.at("error_bound").get<double>();
    c.slack = j.at("slack").get<double>();
    const auto& g = j.at("grids");
    c.grids = {g.at("n_circle").get<std::size_t>(), g.at("m_grid").get<std::size_t>(), g.at("pl_step").get<double>()};
    const auto& rel = j.at("relation");
    if (rel.at("type").get<std::string>() == "pl") {
      c.relation = pl_from(rel);
    } else {
      c.relation = Correspondence(rel.at("left_size").get<std::size_t>(), rel.at("right_size").get<std::size_t>(),
                                  pairs_from(rel.at("pairs")));
    }
    return c;
  });
}

}  // namespace ghkit::io
