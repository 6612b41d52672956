#include "deacp_cli/cli.hpp"

#include "deacp/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <unistd.h>

namespace deacp::cli {

namespace {

struct Answer {
    std::optional<BitString> value;
    std::string error;
};

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

} // namespace

FunctionSpec external_oracle(const std::string &command, std::size_t arity,
                             const std::vector<std::vector<BitString>> &inputs)
{
    char path[] = "/tmp/deacp-oracle-XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) throw Error("cannot create a temporary file for the oracle");
    close(fd);
    {
        std::ofstream f(path);
        for (auto &args : inputs) f << format_tuple(args) << "\n";
    }

    std::vector<std::string> lines;
    std::string failure;
    std::string shell = command + " < " + path;
    if (FILE *p = popen(shell.c_str(), "r")) {
        std::string line;
        int ch;
        while ((ch = std::fgetc(p)) != EOF) {
            if (ch == '\n') {
                lines.push_back(trim(line));
                line.clear();
            } else {
                line += static_cast<char>(ch);
            }
        }
        if (!line.empty()) lines.push_back(trim(line));
        int status = pclose(p);
        if (status != 0) failure = "oracle command exited with status " + std::to_string(status);
    } else {
        failure = "cannot start the oracle command";
    }
    std::remove(path);

    auto table = std::make_shared<std::map<std::vector<BitString>, Answer>>();
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        Answer a;
        if (k >= lines.size()) {
            a.error = failure.empty() ? "no answer" : failure;
        } else if (lines[k] != "undef") {
            try {
                a.value = BitString::parse(lines[k]);
            } catch (const Error &) {
                a.error = "unreadable answer '" + lines[k] + "'";
            }
        }
        (*table)[inputs[k]] = a;
    }

    FunctionSpec f;
    f.arity = arity;
    f.oracle = [table](const std::vector<BitString> &args) -> std::optional<BitString> {
        auto it = table->find(args);
        if (it == table->end()) throw Error("no answer");
        if (!it->second.error.empty()) throw Error(it->second.error);
        return it->second.value;
    };
    return f;
}

} // namespace deacp::cli
