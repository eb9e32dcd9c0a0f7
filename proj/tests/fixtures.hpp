#pragma once

#include <filesystem>

#include "attopmm/scenario.hpp"

namespace fixture {

std::filesystem::path data_dir();
attopmm::io::ScenarioConfig pentacene_config();
/// Built once per process.
const attopmm::Scenario& pentacene();
/// Period of the shipped wave packet, atomic units.
double period();

}  // namespace fixture
