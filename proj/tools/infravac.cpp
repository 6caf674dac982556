#include "infravac/campaign/cli.hpp"

int main(int argc, char** argv) {
  return infravac::campaign::run_cli(argc, argv);
}
