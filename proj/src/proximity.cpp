#include "vecsum/proximity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vecsum {

double prox(const std::array<double, 2>& a, const std::array<double, 2>& b,
            double scale) {
    return std::exp(-scale * std::hypot(a[0] - b[0], a[1] - b[1]));
}

ProximityBook::ProximityBook(ProximityConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.leaf_size < 2 * (cfg_.params.beta + 1)) {
        throw InvalidConfig("proximity leaf_size must be >= 2 * (beta + 1)");
    }
    if (!(cfg_.scale > 0.0) || !std::isfinite(cfg_.scale)) {
        throw InvalidConfig("proximity distance scale must be positive and finite");
    }
}

std::size_t ProximityBook::intern(const std::string& id) {
    auto [it, inserted] = id_map_.try_emplace(id, ids_.size());
    if (inserted) {
        ids_.push_back(id);
        pos_.push_back({0.0, 0.0});
        rows_.emplace_back(cfg_.params, cfg_.leaf_size, cfg_.rule);
        update_count_.push_back(0);
    }
    return it->second;
}

void ProximityBook::row_insert(std::size_t row, std::size_t coord, double value) {
    SparseVector v;
    // Values under the cutoff become the zero vector: the event still
    // counts toward the row's average, only its tiny mass is dropped.
    if (value > 0.0 && value >= cfg_.min_prox) {
        v.entries.emplace_back(coord, value);
    }
    rows_[row].insert(v);
    ++update_count_[row];
}

void ProximityBook::ingest(const LocationRecord& rec) {
    if (!std::isfinite(rec.lon) || !std::isfinite(rec.lat)) {
        throw InvalidScalar("location record for '" + rec.id + "' has non-finite coordinates");
    }
    std::size_t u = intern(rec.id);
    pos_[u] = {rec.lon, rec.lat};
    for (std::size_t j = 0; j < pos_.size(); ++j) {
        if (j == u) continue;
        double p = prox(pos_[u], pos_[j], cfg_.scale);
        row_insert(u, j, p);
        row_insert(j, u, p);
    }
}

void ProximityBook::ingest_edge(const std::string& a, const std::string& b,
                                double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw InvalidScalar("edge weight must be positive and finite");
    }
    std::size_t ia = intern(a);
    std::size_t ib = intern(b);
    if (ia == ib) return;
    row_insert(ia, ib, weight);
    row_insert(ib, ia, weight);
}

std::size_t ProximityBook::user_index(const std::string& id) const {
    auto it = id_map_.find(id);
    if (it == id_map_.end()) {
        throw UnknownUser("no such user: '" + id + "'");
    }
    return it->second;
}

std::uint64_t ProximityBook::row_update_count(std::size_t user_idx) const {
    return update_count_.at(user_idx);
}

std::size_t ProximityBook::stored_scalars() const {
    std::size_t total = 0;
    for (const auto& row : rows_) total += row.stored_scalars();
    return total;
}

SparseVector ProximityBook::average_row(const std::string& user) const {
    std::size_t u = user_index(user);
    if (update_count_[u] == 0) return {};
    DenseVector mean = estimate_mean(rows_[u].finalize());
    SparseVector out;
    for (std::size_t j = 0; j < mean.size(); ++j) {
        if (mean[j] != 0.0) out.entries.emplace_back(j, mean[j]);
    }
    return out;
}

std::vector<std::pair<std::string, double>> ProximityBook::heavy_hitters(
    const std::string& user, std::size_t k) const {
    if (k == 0) {
        throw InvalidInput("heavy hitter query needs k >= 1");
    }
    SparseVector row = average_row(user);
    std::vector<std::pair<std::uint64_t, double>> entries = row.entries;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (entries.size() > k) entries.resize(k);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(entries.size());
    for (const auto& [idx, value] : entries) {
        out.emplace_back(ids_.at(idx), value);
    }
    return out;
}

namespace {

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

LocationRecord record_from_json(const std::string& line, std::size_t lineno) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("t") || !j.contains("id") ||
        !j.contains("lon") || !j.contains("lat")) {
        throw InvalidInput("bad gps record on line " + std::to_string(lineno));
    }
    LocationRecord rec;
    rec.t = j.at("t").get<double>();
    rec.id = j.at("id").get<std::string>();
    rec.lon = j.at("lon").get<double>();
    rec.lat = j.at("lat").get<double>();
    return rec;
}

LocationRecord record_from_csv(const std::string& line, std::size_t lineno) {
    std::stringstream ss(line);
    std::string t, id, lon, lat;
    if (!std::getline(ss, t, ',') || !std::getline(ss, id, ',') ||
        !std::getline(ss, lon, ',') || !std::getline(ss, lat)) {
        throw InvalidInput("bad gps record on line " + std::to_string(lineno));
    }
    try {
        return LocationRecord{std::stod(t), id, std::stod(lon), std::stod(lat)};
    } catch (const std::exception&) {
        throw InvalidInput("bad gps record on line " + std::to_string(lineno));
    }
}

} // namespace

std::vector<LocationRecord> parse_gps_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open gps file: " + path);
    }
    std::vector<LocationRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::size_t first = line.find_first_not_of(" \t");
        if (line[first] == '{') {
            out.push_back(record_from_json(line, lineno));
        } else {
            // Skip a header row like "t,id,lon,lat".
            if (lineno == 1 && !line.empty() && !std::isdigit(static_cast<unsigned char>(line[first])) &&
                line[first] != '-' && line[first] != '+' && line[first] != '.') {
                continue;
            }
            out.push_back(record_from_csv(line, lineno));
        }
    }
    return out;
}

std::vector<Edge> parse_edge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open edge file: " + path);
    }
    std::vector<Edge> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (blank(line)) continue;
        std::stringstream ss(line);
        Edge e;
        if (!(ss >> e.src >> e.dst)) {
            throw InvalidInput("bad edge on line " + std::to_string(lineno));
        }
        if (!(ss >> e.weight)) {
            ss.clear();   // missing weight is fine, but keep junk detectable
            e.weight = 1.0;
        }
        std::string extra;
        if (ss >> extra) {
            throw InvalidInput("trailing tokens on edge line " + std::to_string(lineno));
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace vecsum
