#include "minreg/campaign.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace minreg {

namespace {

using nlohmann::json;

CtpSource parse_ctp(const json& j, const std::string& origin) {
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "constant") return CtpSource::constant(j.at("value").get<double>());
  if (mode == "table") return CtpSource::per_node(j.at("values").get<std::vector<double>>());
  if (mode == "topic-table") {
    std::vector<double> flat;
    for (const auto& row : j.at("values"))
      for (const auto& v : row) flat.push_back(v.get<double>());
    return CtpSource::topic_table(std::move(flat));
  }
  if (mode == "uniform")
    return CtpSource::uniform_range(j.at("lo").get<double>(), j.at("hi").get<double>(),
                                    j.value("seed", std::uint64_t{0}));
  throw std::invalid_argument(origin + ": unknown ctp mode '" + mode + "'");
}

json ctp_to_json(const CtpSource& c) {
  json j;
  switch (c.kind) {
    case CtpSource::kConstant:
      j["mode"] = "constant";
      j["value"] = c.value;
      break;
    case CtpSource::kTable:
      j["mode"] = "table";
      j["values"] = c.table;
      break;
    case CtpSource::kTopicTable:
      j["mode"] = "topic-table";
      j["values"] = c.table;  // flattened user-major; reloaded flat
      break;
    case CtpSource::kUniform:
      j["mode"] = "uniform";
      j["lo"] = c.lo;
      j["hi"] = c.hi;
      j["seed"] = c.seed;
      break;
  }
  return j;
}

}  // namespace

std::vector<AdSpec> parse_campaign(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  const json& arr = doc.is_array() ? doc : doc.at("ads");
  std::vector<AdSpec> ads;
  for (const auto& j : arr) {
    AdSpec ad;
    ad.id = j.value("id", static_cast<int>(ads.size()));
    ad.gamma = j.at("gamma").get<std::vector<double>>();
    ad.budget = j.at("budget").get<double>();
    ad.cpe = j.at("cpe").get<double>();
    ad.ctp = parse_ctp(j.at("ctp"), origin);
    ad.boost_beta = j.value("boost_beta", 0.0);
    ads.push_back(std::move(ad));
  }
  return ads;
}

std::vector<AdSpec> load_campaign(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open campaign file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_campaign(buf.str(), path);
}

void save_campaign(const std::vector<AdSpec>& ads, const std::string& path) {
  json arr = json::array();
  for (const AdSpec& ad : ads) {
    json j;
    j["id"] = ad.id;
    j["gamma"] = ad.gamma;
    j["budget"] = ad.budget;
    j["cpe"] = ad.cpe;
    j["ctp"] = ctp_to_json(ad.ctp);
    if (ad.boost_beta != 0.0) j["boost_beta"] = ad.boost_beta;
    arr.push_back(std::move(j));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write campaign file: " + path);
  out << arr.dump(2) << '\n';
}

AttentionSpec load_attention(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open attention file: " + path);
  AttentionSpec spec;
  bool have_default = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    long long kappa;
    if (!(ls >> key >> kappa) || kappa < 0)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected '<node> <kappa>'");
    if (key == "default" || key == "*") {
      spec.default_kappa = static_cast<std::uint32_t>(kappa);
      have_default = true;
    } else {
      spec.overrides.emplace_back(static_cast<NodeId>(std::stoull(key)),
                                  static_cast<std::uint32_t>(kappa));
    }
  }
  if (!have_default && spec.overrides.empty())
    throw std::invalid_argument(path + ": empty attention file");
  return spec;
}

}  // namespace minreg
