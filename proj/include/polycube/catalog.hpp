#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycube/lattice.hpp"

namespace polycube {

class UnknownShapeError : public std::invalid_argument {
public:
    explicit UnknownShapeError(const std::string& name);
};

/// A catalog entry failed its load-time check, i.e. the coordinates do not
/// describe the published shape.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(std::string shape, std::string check);
    const std::string& shape() const noexcept { return shape_; }
    const std::string& check() const noexcept { return check_; }

private:
    std::string shape_;
    std::string check_;
};

/// Cube, Domino, P6, P6minus, P222, Pplus, P14, P44 and P44tower.
std::vector<std::string> catalog_names();

/// Looks a shape up by name (case-insensitive). P44tower needs k >= 1;
/// "P44tower(3)" is accepted as a name too.
Polycube catalog(const std::string& name, std::optional<int> k = std::nullopt);

/// P44 with k copies of P6minus stacked above its highest cube.
Polycube p44_tower(int k);

} // namespace polycube
