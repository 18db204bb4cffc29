#pragma once

#include <stdexcept>
#include <string>

namespace lgsim {

struct InvalidRates : std::runtime_error {
  explicit InvalidRates(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidKernel : std::runtime_error {
  explicit InvalidKernel(const std::string& what) : std::runtime_error(what) {}
};

struct WindowMismatch : std::runtime_error {
  explicit WindowMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct WindowTooSmall : std::runtime_error {
  explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct DensityOutOfRange : std::runtime_error {
  explicit DensityOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct BlockOutOfWindow : std::runtime_error {
  explicit BlockOutOfWindow(const std::string& what) : std::runtime_error(what) {}
};

struct NoClosedForm : std::runtime_error {
  explicit NoClosedForm(const std::string& what) : std::runtime_error(what) {}
};

struct InteractionOverflow : std::runtime_error {
  explicit InteractionOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct TimeTooLarge : std::runtime_error {
  explicit TimeTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NonpositiveTime : std::runtime_error {
  explicit NonpositiveTime(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lgsim
