#include "spikes/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spikes {

using nlohmann::json;

std::string to_json(const AtomicMeasure& mu) {
    json atoms = json::array();
    for (const Atom& a : mu.atoms())
        atoms.push_back({{"x", a.position.value()}, {"a", a.amplitude}});
    return json{{"atoms", atoms}}.dump();
}

std::string to_json(const MomentVector& y) {
    return json{{"f_c", y.system.cutoff()}, {"y", y.y}}.dump();
}

std::string to_json(const TrigPolynomial& eta) {
    return json{{"f_c", eta.system.cutoff()}, {"p", eta.p}}.dump();
}

AtomicMeasure measure_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& entry : j.at("atoms"))
        atoms.push_back(Atom{TorusPoint(entry.at("x").get<double>()),
                             entry.at("a").get<double>()});
    return AtomicMeasure(std::move(atoms));
}

MomentVector moments_from_json(const std::string& text) {
    const json j = json::parse(text);
    return MomentVector(TrigSystem(j.at("f_c").get<int>()),
                        j.at("y").get<std::vector<double>>());
}

TrigPolynomial trig_poly_from_json(const std::string& text) {
    const json j = json::parse(text);
    return TrigPolynomial(TrigSystem(j.at("f_c").get<int>()),
                          j.at("p").get<std::vector<double>>());
}

std::string to_csv(const std::vector<double>& v) {
    json tmp;  // reuse the shortest round-trip double formatter
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        tmp = v[i];
        out << tmp.dump();
    }
    return out.str();
}

std::vector<double> csv_to_vector(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        // Tolerate newline-separated values as well.
        std::istringstream item(token);
        double v;
        while (item >> v) out.push_back(v);
    }
    return out;
}

std::string to_csv(const Mat& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::vector<double> row(m.a.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                                m.a.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
        out << to_csv(row) << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << contents;
}

}  // namespace spikes
