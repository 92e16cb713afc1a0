#include "rackforge/caps.hpp"

#include <cstdlib>
#include <json.hpp>

namespace rackforge {

void apply_caps_json(Caps &c, const std::string &json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception &e) {
        throw cap_config_error(std::string("bad RACKFORGE_CAPS JSON: ") + e.what());
    }
    if (!j.is_object()) throw cap_config_error("RACKFORGE_CAPS must be a JSON object");
    auto get = [&](const char *key, auto &field) {
        if (j.contains(key)) {
            if (!j[key].is_number_unsigned())
                throw cap_config_error(std::string("cap '") + key + "' must be a nonnegative integer");
            field = j[key].template get<std::decay_t<decltype(field)>>();
        }
    };
    get("group_elements", c.group_elements);
    get("rack_size", c.rack_size);
    get("iso_size", c.iso_size);
    get("subrack_exhaustive", c.subrack_exhaustive);
    get("clique_count", c.clique_count);
    get("homology_rack", c.homology_rack);
    get("chain_cells", c.chain_cells);
    get("cocycle_rack", c.cocycle_rack);
    get("symmetrizer_cells", c.symmetrizer_cells);
    get("nichols_degree", c.nichols_degree);
    get("nichols_dim", c.nichols_dim);
    get("point_count", c.point_count);
    get("jobs", c.jobs);
}

Caps &caps() {
    static Caps instance = [] {
        Caps c;
        if (const char *env = std::getenv("RACKFORGE_CAPS")) apply_caps_json(c, env);
        return c;
    }();
    return instance;
}

}  // namespace rackforge
