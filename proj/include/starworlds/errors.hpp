#pragma once

#include <stdexcept>
#include <string>

namespace starworlds {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geom
struct DegenerateHull : Error { using Error::Error; };
struct NotFreeExterior : Error { using Error::Error; };
struct PointInsideShape : Error { using Error::Error; };
struct MalformedInput : Error { using Error::Error; };

// starshape
struct OriginOutsideKernel : Error { using Error::Error; };

// starworld
struct RobotInsideObstacle : Error { using Error::Error; };
struct GoalInsideObstacle : Error { using Error::Error; };
struct IterationLimit : Error { using Error::Error; };
struct EmptyKernel : Error { using Error::Error; };

// planner
struct InsideObstacle : Error { using Error::Error; };

// scenario
struct ParseError : Error { using Error::Error; };
struct SchemaVersionError : Error { using Error::Error; };
struct PlacementFailure : Error { using Error::Error; };

}  // namespace starworlds
