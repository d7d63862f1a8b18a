#pragma once

#include <memory>

#include "loopline/sim.hpp"

namespace loopline::elevator {

// MAIN ("move away if necessary"), single vehicle on a line. From the
// depot it serves up to Cap waiting up-passengers on a subtour to the
// furthest selected destination and back; with no up-passengers waiting it
// rides up to the furthest waiting down-origin and serves up to Cap
// down-passengers on the way home. Up-passengers released mid-ascent are
// boarded when capacity remains (extending the apex if needed), and
// down-passengers released mid-descent are picked up along the way.
std::unique_ptr<sim::Policy> make_main();

}  // namespace loopline::elevator
