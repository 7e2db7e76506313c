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

#include <cstdio>

#include "aperture_forge/errors.hpp"
#include "aperture_forge/io_util.hpp"

namespace aperture_forge
{

std::string format_num(double value)
{
    char buf[64];
    int written = std::snprintf(buf, sizeof(buf), "%.12g", value);
    if (written < 0 || written >= static_cast<int>(sizeof(buf)))
        throw IoError("format_num: numeric formatting failed");
    return std::string(buf, static_cast<size_t>(written));
}

CsvWriter::CsvWriter(const std::string &path) : path(path), stream(path, std::ios::out | std::ios::trunc)
{
    if (!stream.is_open())
        throw IoError("cannot open for writing: " + path);
}

void CsvWriter::check_stream()
{
    if (!stream.good())
        throw IoError("write failed: " + path);
}

void CsvWriter::comment(const std::string &key, const std::string &value)
{
    if (header_written)
        throw IoError("CSV comments must precede the header: " + path);
    stream << "# " << key << ": " << value << "\n";
    check_stream();
}

void CsvWriter::header(const std::vector<std::string> &columns)
{
    if (header_written)
        throw IoError("CSV header written twice: " + path);
    column_count = columns.size();
    for (size_t i = 0; i < columns.size(); i++)
        stream << (i ? "," : "") << columns[i];
    stream << "\n";
    header_written = true;
    check_stream();
}

void CsvWriter::row(const std::vector<std::string> &cells)
{
    if (!header_written)
        throw IoError("CSV row before header: " + path);
    if (cells.size() != column_count)
        throw IoError("CSV row width mismatch: " + path);
    for (size_t i = 0; i < cells.size(); i++)
        stream << (i ? "," : "") << cells[i];
    stream << "\n";
    check_stream();
}

void CsvWriter::numeric_row(const std::vector<double> &cells)
{
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double value : cells)
        text.push_back(format_num(value));
    row(text);
}

void CsvWriter::close()
{
    if (closed)
        return;
    closed = true;
    stream.flush();
    if (!stream.good())
        throw IoError("flush failed: " + path);
    stream.close();
}

CsvWriter::~CsvWriter()
{
    try
    {
        close();
    }
    catch (...)
    {
        // Destructors must not throw; explicit close() reports failures.
    }
}

void write_json_file(const std::string &path, const nlohmann::json &doc)
{
    std::ofstream stream(path, std::ios::out | std::ios::trunc);
    if (!stream.is_open())
        throw IoError("cannot open for writing: " + path);
    stream << doc.dump(2) << "\n";
    stream.flush();
    if (!stream.good())
        throw IoError("write failed: " + path);
}

nlohmann::json read_json_file(const std::string &path)
{
    std::ifstream stream(path);
    if (!stream.is_open())
        throw IoError("cannot open for reading: " + path);
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(stream);
    }
    catch (const nlohmann::json::parse_error &err)
    {
        throw ConfigError("invalid JSON in " + path + ": " + err.what());
    }
    return doc;
}

}
