#pragma once

#include <string>

#include "igt/fourier.hpp"
#include "igt/graph.hpp"
#include "igt/model.hpp"
#include "igt/trainer.hpp"

namespace igt {

// Graph persistence. JSON keeps the full GraphSpec (including declared grid
// dimensions); load_graph also accepts plain edge-list text files.
void save_graph(const std::string& path, const GraphSpec& g);
GraphSpec load_graph(const std::string& path);

// Model persistence: a JSON manifest (<prefix>.json) holding every small
// field, plus IGTM tensors for the Fourier columns (<prefix>.fourier.igtm)
// and each bank's spectra (<prefix>.bank<k>.igtm).
void save_model(const std::string& prefix, const IGTModel& model);
IGTModel load_model(const std::string& prefix);

// Fourier-only persistence for the pairing stage: <prefix>.json with the
// index maps and <prefix>.fourier.igtm with the columns.
void save_fourier(const std::string& prefix, const SpectralFourier& f,
                  const PairMap& pm);
SpectralFourier load_fourier(const std::string& prefix);

void save_training_log(const std::string& path, const TrainReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace igt
