#pragma once

#include <string>

namespace ordkit {

// Process-wide knobs. Set once at startup (CLI, tests); read everywhere else.
struct Config {
    int n = 2;          // level of the collapsing functions, n >= 2
    int hf_cap = 6;     // max von Neumann rank of HF constants
    int size_cap = 7;   // term size cap for enumerations
    int depth_cap = 12; // stage depth cap for hull_stages
};

const Config& config();
void set_config(const Config& c);

// JSON object with any subset of the keys above; unknown keys are rejected.
Config load_config(const std::string& path);

}  // namespace ordkit
