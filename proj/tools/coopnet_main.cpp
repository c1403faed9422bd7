// SPDX-License-Identifier: Apache-2.0
//
// coopnet: Monte-Carlo simulation and closed-form analysis of cooperative
// relay networks with multi-stream selection cooperation.
//
//   coopnet simulate --config scenario.conf --out outage.csv
//   coopnet capacity --config scenario.conf --out capacity.csv
//   coopnet bound    --config scenario.conf
//   coopnet dmt      --config scenario.conf
//   coopnet trt      --config scenario.conf
//   coopnet shift    --config scenario.conf --workers 4
//
// Flags: --config <file> (required), --out <file>, --workers <n>, --seed <n>,
// --plot-script <file>, --trace <file>. See README.md for the config keys.
#include "coopnet/cli.hpp"

int main(int argc, char** argv) { return coopnet::cli::run_cli(argc, argv); }
