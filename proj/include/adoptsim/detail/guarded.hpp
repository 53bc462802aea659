#pragma once

#include <ostream>

#include "adoptsim/errors.hpp"

namespace adoptsim {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ShapeError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace adoptsim
