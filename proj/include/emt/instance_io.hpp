#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "emt/problems.hpp"

namespace emt {

// Reads one instance in the family's published plain-text format:
//   TSP  - TSPLIB, EDGE_WEIGHT_TYPE EUC_2D, NODE_COORD_SECTION
//   CVRP - Augerat .vrp (CAPACITY, NODE_COORD_SECTION, DEMAND_SECTION, DEPOT_SECTION)
//   QAP  - QAPLIB: n, flow matrix, distance matrix
//   LOP  - LOLIB: optional name line, n, weight matrix
// `name` is used when the file carries no NAME field.
TaskDefinition load_instance(Family family, std::istream& source, const std::string& name = {});
TaskDefinition load_instance_file(Family family, const std::filesystem::path& path);

// TSPLIB .tour: TOUR_SECTION node list terminated by -1.
std::vector<int> read_tsplib_tour(std::istream& source);
// QAPLIB .sln: "n cost" followed by the n-element assignment.
std::vector<int> read_qaplib_solution(std::istream& source);
// CVRPLIB .sol: lines "Route #k: c1 c2 ..." (customers numbered 1..n, depot implied).
std::vector<std::vector<int>> read_cvrp_solution(std::istream& source);
// Whitespace-separated 1-based ordering; non-numeric leading lines are skipped.
std::vector<int> read_ordering(std::istream& source);

}  // namespace emt
