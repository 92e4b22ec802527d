#pragma once

#include "subsim/entanglement.hpp"
#include "subsim/model.hpp"

namespace subsim {

// True when an exact closed form covers the configuration.
bool has_closed_form(const Config& cfg);

// Metrics via the fastest exact path: closed forms where they exist,
// otherwise the block engine. Click-pattern outcomes always go through the
// block engine for the log-negativity; their probability is closed-form
// either way.
Metrics evaluate_config(const Config& cfg);

// Metrics strictly via the block engine, whatever the configuration.
Metrics evaluate_block_engine(const Config& cfg);

} // namespace subsim
