#include "minifab/util.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace minifab {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace((unsigned char)s[i]))
            i++;
        size_t j = i;
        while (j < s.size() && !std::isspace((unsigned char)s[j]))
            j++;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_on(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); i++) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a]))
        a++;
    while (b > a && std::isspace((unsigned char)s[b - 1]))
        b--;
    return std::string(s.substr(a, b - a));
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string read_text_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open file for writing: " + path);
    f << text;
    if (!f)
        throw Error("write failed: " + path);
}

std::vector<uint8_t> read_binary_file(const std::string &path) {
    std::string s = read_text_file(path);
    return {s.begin(), s.end()};
}

void write_binary_file(const std::string &path, const std::vector<uint8_t> &data) {
    write_text_file(path, std::string(data.begin(), data.end()));
}

} // namespace minifab
