#include "korops/error.hpp"

#include <sstream>
#include <utility>

namespace korops {

namespace {

std::string mismatch_message(std::size_t expected, std::size_t actual) {
  std::ostringstream os;
  os << "dimension mismatch: expected " << expected << ", got " << actual;
  return os.str();
}

std::string not_self_map_message(const std::vector<double>& re, const std::vector<double>& im,
                                 std::size_t component, double image_im) {
  std::ostringstream os;
  os.precision(17);
  os << "not a self-map at z = (";
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (k) os << ", ";
    os << re[k] << (im[k] < 0 ? "" : "+") << im[k] << "i";
  }
  os << "): component " << (component + 1) << " has Im = " << image_im;
  return os.str();
}

std::string parse_message(const std::string& message, std::size_t component, std::size_t position,
                          const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "component " << (component + 1) << ", position " << position << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

std::string branch_message(double re, double im) {
  std::ostringstream os;
  os.precision(17);
  os << "principal power undefined: base " << re << (im < 0 ? "" : "+") << im
     << "i lies on the closed negative real axis";
  return os.str();
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : Error(mismatch_message(expected, actual)), expected_(expected), actual_(actual) {}

EvaluationError::EvaluationError(const std::string& what, std::optional<std::size_t> coordinate)
    : Error(coordinate ? what + " (coordinate z" + std::to_string(*coordinate + 1) + ")" : what),
      coordinate_(coordinate) {}

BranchCutError::BranchCutError(double re, double im, std::optional<std::size_t> coordinate)
    : EvaluationError(branch_message(re, im), coordinate), re_(re), im_(im) {}

NotSelfMapAt::NotSelfMapAt(std::vector<double> point_re, std::vector<double> point_im,
                           std::size_t component, double image_im)
    : Error(not_self_map_message(point_re, point_im, component, image_im)),
      re_(std::move(point_re)),
      im_(std::move(point_im)),
      component_(component),
      image_im_(image_im) {}

ParseError::ParseError(const std::string& message, std::size_t component, std::size_t position,
                       std::vector<std::string> expected)
    : Error(parse_message(message, component, position, expected)),
      component_(component),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace korops
