#include "periorb/germ_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace periorb {

using nlohmann::ordered_json;

std::string germ_to_string(const GermMap& germ) {
    ordered_json doc;
    doc["zeta_order"] = germ.context()->level();
    doc["truncation"] = germ.degree();
    ordered_json comps = ordered_json::array();
    for (int j = 0; j < 2; ++j) {
        ordered_json terms = ordered_json::array();
        for (const auto& [e, c] : germ.component(j).terms()) {
            ordered_json t;
            t["e"] = {e.first, e.second};
            t["c"] = c.str();
            terms.push_back(std::move(t));
        }
        comps.push_back(std::move(terms));
    }
    doc["components"] = std::move(comps);
    return doc.dump(2) + "\n";
}

GermMap germ_from_string(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("germ file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("zeta_order") || !doc.contains("truncation") || !doc.contains("components"))
        throw std::invalid_argument("germ file needs zeta_order, truncation and components");
    const long level = doc["zeta_order"].get<long>();
    const int degree = doc["truncation"].get<int>();
    if (level < 1) throw std::invalid_argument("zeta_order must be positive");
    if (degree < 1) throw std::invalid_argument("truncation must be positive");
    auto ctx = CycloContext::get(level);

    const auto& comps = doc["components"];
    if (!comps.is_array() || comps.size() != 2)
        throw std::invalid_argument("components must hold exactly two term lists");

    Jet2 jets[2] = {Jet2(ctx, degree), Jet2(ctx, degree)};
    for (int j = 0; j < 2; ++j) {
        for (const auto& t : comps[static_cast<size_t>(j)]) {
            if (!t.contains("e") || !t.contains("c"))
                throw std::invalid_argument("each term needs fields e and c");
            const auto& e = t["e"];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("term exponents must be a pair");
            int i1 = e[0].get<int>(), i2 = e[1].get<int>();
            if (i1 < 0 || i2 < 0) throw std::invalid_argument("negative exponent in germ file");
            if (i1 + i2 > degree)
                throw std::invalid_argument("term degree exceeds declared truncation");
            if (i1 + i2 == 0)
                throw std::invalid_argument("germ must fix the origin (constant term found)");
            CycloNum c = CycloNum::parse(ctx, t["c"].get<std::string>());
            if (c.is_zero()) throw std::invalid_argument("zero coefficient stored in germ file");
            if (!jets[j].coeff(i1, i2).is_zero())
                throw std::invalid_argument("duplicate exponent pair in germ file");
            jets[j].set_coeff(i1, i2, c);
        }
    }
    return GermMap(std::move(jets[0]), std::move(jets[1]));
}

void write_germ_file(const std::string& path, const GermMap& germ) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << germ_to_string(germ);
    if (!out) throw std::invalid_argument("write failed: " + path);
}

GermMap read_germ_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open germ file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return germ_from_string(buf.str());
}

} // namespace periorb
