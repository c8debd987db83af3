#include <klr/jsonio.hpp>

#include <fstream>
#include <sstream>

namespace klr {

std::string int_key(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> int_unkey(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string piece = s.substr(pos, next - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw std::domain_error("not an integer list: " + s);
        }
        pos = next + 1;
    }
    return out;
}

Json laurent_to_json(const LaurentPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.c) out.push_back(Json::array({e, c.str()}));
    return out;
}

LaurentPoly laurent_from_json(const Json& j) {
    if (!j.is_array()) throw std::domain_error("polynomial JSON must be an array");
    LaurentPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
            throw std::domain_error("polynomial term must be [exponent, \"coefficient\"]");
        p += LaurentPoly::term(Int(t[1].get<std::string>()), t[0].get<int>());
    }
    return p;
}

Json character_to_json(const ShuffleElt& e) {
    // Highest word first, so each character leads with its good word.
    Json out = Json::object();
    for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it)
        out[int_key(it->first)] = laurent_to_json(it->second);
    return out;
}

ShuffleElt character_from_json(const Json& j) {
    if (!j.is_object()) throw std::domain_error("character JSON must be an object");
    ShuffleElt e;
    for (const auto& [k, v] : j.items()) e.add(int_unkey(k), laurent_from_json(v));
    return e;
}

Json cartan_to_json(const CartanData& cd) {
    Json rows = Json::array();
    for (int i = 0; i < cd.rank(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < cd.rank(); ++j) row.push_back(cd.pair(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

CartanData cartan_from_json(const Json& j) {
    if (!j.is_array()) throw std::domain_error("pairing JSON must be an array of rows");
    CartanData cd;
    for (const auto& row : j) {
        if (!row.is_array()) throw std::domain_error("pairing JSON must be an array of rows");
        cd.bil.emplace_back();
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw std::domain_error("pairing entries are integers");
            cd.bil.back().push_back(x.get<int>());
        }
    }
    cd.validate();
    return cd;
}

Json cuspidal_table_to_json(CuspidalTable& t) {
    Json out = Json::object();
    out["pairing"] = cartan_to_json(t.order().system().cartan());
    out["word"] = t.order().to_word();
    Json entries = Json::object();
    for (const auto& [root, e] : t.all()) entries[int_key(root)] = character_to_json(e);
    out["entries"] = std::move(entries);
    return out;
}

void cuspidal_table_load(const Json& j, CuspidalTable& t) {
    if (!j.is_object() || !j.contains("entries"))
        throw std::domain_error("cuspidal table JSON must carry entries");
    if (cartan_from_json(j.at("pairing")).bil != t.order().system().cartan().bil)
        throw std::domain_error("cuspidal table JSON is for a different datum");
    if (j.at("word").get<std::vector<int>>() != t.order().to_word())
        throw std::domain_error("cuspidal table JSON is for a different order");
    for (const auto& [k, v] : j.at("entries").items())
        t.set(int_unkey(k), character_from_json(v));
}

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cuspidal_cache_key(const CartanData& cd, const Word& word) {
    std::string s = "pairing=";
    for (int i = 0; i < cd.rank(); ++i) {
        for (int j = 0; j < cd.rank(); ++j) s += std::to_string(cd.pair(i, j)) + ",";
        s += ";";
    }
    s += "|word=" + int_key(word);
    std::ostringstream os;
    os << std::hex << fnv64(s);
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::domain_error("cannot write " + path);
    out << text;
    if (!out.flush()) throw std::domain_error("cannot write " + path);
}

} // namespace klr
