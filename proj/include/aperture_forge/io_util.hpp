// SPDX-License-Identifier: Apache-2.0
//
// aperture-forge: finite-aperture linear array placement design and analysis
// Copyright (C) 2026 The aperture-forge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef APERTURE_FORGE_IO_UTIL_H
#define APERTURE_FORGE_IO_UTIL_H

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace aperture_forge
{
    // 12-significant-digit text form used for every numeric CSV payload.
    // Deterministic for identical doubles, so re-runs are byte-identical.
    std::string format_num(double value);

    // CSV writer with '#'-prefixed metadata comment lines ahead of the
    // header. All I/O failures surface as IoError carrying the path.
    class CsvWriter
    {
    public:
        explicit CsvWriter(const std::string &path);

        void comment(const std::string &key, const std::string &value);
        void header(const std::vector<std::string> &columns);
        void row(const std::vector<std::string> &cells);
        void numeric_row(const std::vector<double> &cells);
        void close(); // flush + error check; also run by the destructor

        ~CsvWriter();
        CsvWriter(const CsvWriter &) = delete;
        CsvWriter &operator=(const CsvWriter &) = delete;

    private:
        std::string path;
        std::ofstream stream;
        size_t column_count = 0;
        bool header_written = false;
        bool closed = false;

        void check_stream();
    };

    // Serialize with 2-space indentation and a trailing newline.
    void write_json_file(const std::string &path, const nlohmann::json &doc);

    nlohmann::json read_json_file(const std::string &path);
}

#endif
