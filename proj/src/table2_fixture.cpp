#include "dcp/reconstruction.hpp"

#include <sstream>

namespace dcp {
namespace {

// kept shots of the eight hardware runs, same rows as data/table2_counts.csv
constexpr char kPublished[] = R"(case,bitstring,count
A,0101,517
A,0111,9
A,1100,682
A,1110,20
B,0101,638
B,0111,9
B,1100,575
B,1110,14
C,0101,624
C,0111,14
C,1100,632
C,1110,13
D,0101,642
D,0111,17
D,1100,583
D,1110,13
E,0101,89
E,0111,603
E,1100,56
E,1110,477
F,0101,73
F,0111,563
F,1100,50
F,1110,490
G,0101,61
G,0111,526
G,1100,51
G,1110,552
H,0101,78
H,0111,560
H,1100,75
H,1110,545
)";

}  // namespace

const std::vector<CaseCounts>& published_counts() {
  static const std::vector<CaseCounts> table = [] {
    std::istringstream in(kPublished);
    return load_counts_csv(in);
  }();
  return table;
}

}  // namespace dcp
