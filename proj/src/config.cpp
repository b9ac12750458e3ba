#include "ordkit/config.hpp"

#include <fstream>
#include "json.hpp"

#include "ordkit/errors.hpp"

namespace ordkit {

namespace {
Config g_config;
}

const Config& config() { return g_config; }

void set_config(const Config& c) {
    if (c.n < 2) fail(ErrorKind::Domain, "level n must be >= 2");
    if (c.hf_cap < 0 || c.size_cap < 1 || c.depth_cap < 0) fail(ErrorKind::Domain, "caps must be non-negative");
    g_config = c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Domain, "cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::Syntax, path + ": " + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::Syntax, path + ": expected a JSON object");
    Config c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number_integer()) fail(ErrorKind::Syntax, path + ": " + it.key() + " must be an integer");
        int v = it.value().get<int>();
        if (it.key() == "n") c.n = v;
        else if (it.key() == "hf_cap") c.hf_cap = v;
        else if (it.key() == "size_cap") c.size_cap = v;
        else if (it.key() == "depth_cap") c.depth_cap = v;
        else fail(ErrorKind::Syntax, path + ": unknown key " + it.key());
    }
    return c;
}

}  // namespace ordkit
