#include "fixtures.hpp"

namespace fixture {

std::filesystem::path data_dir() { return ATTOPMM_DATA_DIR; }

attopmm::io::ScenarioConfig pentacene_config() { return attopmm::io::load_config(data_dir() / "pentacene.json"); }

const attopmm::Scenario& pentacene() {
  static const attopmm::Scenario s = attopmm::build_scenario(pentacene_config());
  return s;
}

double period() { return pentacene().period(); }

}  // namespace fixture
