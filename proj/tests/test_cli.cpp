#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kData = FGC_TEST_DATA;
const fs::path kWork = fs::path(FGC_WORK_DIR) / "cli";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Runs the tool with stdout in `out` and stderr in `err`; returns the exit status.
int run(const std::string& args, const std::string& name = "out") {
    fs::create_directories(kWork);
    std::string cmd = std::string("\"") + FGCRYPT + "\" " + args + " > \"" + (kWork / (name + ".stdout")).string() +
                      "\" 2> \"" + (kWork / (name + ".stderr")).string() + "\"";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out(const std::string& name = "out") { return slurp(kWork / (name + ".stdout")); }
std::string err(const std::string& name = "out") { return slurp(kWork / (name + ".stderr")); }

std::string d(const std::string& rel) { return "\"" + kData + "/" + rel + "\""; }

}  // namespace

TEST_CASE("example encryption through the tool") {
    REQUIRE(run("otp-encrypt --key " + d("example1/key.txt") + " --in " + d("example1/plaintext.txt")) == 0);
    CHECK(out() == slurp(kData + "/example1/ciphertext.txt"));
    auto first = out();
    REQUIRE(run("otp-encrypt --jobs 4 --key " + d("example1/key.txt") + " --in " + d("example1/plaintext.txt")) == 0);
    CHECK(out() == first);

    std::string auts;
    for (int k = 1; k <= 8; ++k) auts += " --aut " + d("example1/f" + std::to_string(k) + ".aut");
    REQUIRE(run("otp-encrypt --key " + d("example1/key.txt") + auts + " --in " + d("example1/plaintext.txt") +
                " --out \"" + (kWork / "ct.txt").string() + "\"") == 0);
    CHECK(slurp(kWork / "ct.txt") == first);

    REQUIRE(run("otp-decrypt --key " + d("example1/key.txt") + " --in " + d("example1/ciphertext.txt")) == 0);
    CHECK(out() == "ILIKEBOB\n");
    REQUIRE(run("otp-decrypt --table --key " + d("example1/key.txt") + " --in " + d("example1/ciphertext.txt")) == 0);
    CHECK(out() == "ILIKEBOB\n");
    REQUIRE(run("otp-table --key " + d("example1/key.txt")) == 0);
    CHECK(out() == slurp(kData + "/example1/table.txt"));
}

TEST_CASE("seeded key generation is deterministic and round trips") {
    auto keygen = "otp-keygen --symbols ABCDEFGH --rank 3 --modulus-exponent 64 --seed 0x00000000deadbeef";
    REQUIRE(run(keygen, "k1") == 0);
    REQUIRE(run(keygen, "k2") == 0);
    CHECK(out("k1") == out("k2"));
    CHECK(out("k1").find("N = 8") != std::string::npos);
    REQUIRE(run("otp-keygen --symbols ABCDEFGH --rank 3 --modulus-exponent 64 --seed 0x00000000deadbeee", "k3") == 0);
    CHECK(out("k3") != out("k1"));

    spit(kWork / "key.txt", out("k1"));
    spit(kWork / "msg.txt", "HEAD BADGE CAFE\n");
    auto key = "\"" + (kWork / "key.txt").string() + "\"";
    REQUIRE(run("otp-encrypt --key " + key + " --in \"" + (kWork / "msg.txt").string() + "\" --out \"" +
                (kWork / "msg.ct").string() + "\"") == 0);
    REQUIRE(run("otp-decrypt --key " + key + " --in \"" + (kWork / "msg.ct").string() + "\"") == 0);
    CHECK(out() == "HEADBADGECAFE\n");
}

TEST_CASE("exit codes") {
    CHECK(run("") == 1);
    CHECK(run("no-such-command") == 1);
    CHECK(run("otp-encrypt") == 1);
    CHECK(run("otp-keygen --symbols AB --rank 2 --seed xyz") == 1);
    CHECK(run("lcg-check --modulus-exponent 0") == 1);
    CHECK(run("--help") == 0);

    spit(kWork / "bad.ct", "a b c\n");
    CHECK(run("otp-decrypt --key " + d("example1/key.txt") + " --in \"" + (kWork / "bad.ct").string() + "\"") == 2);
    CHECK(err().find("unit 1") != std::string::npos);
    spit(kWork / "bad.txt", "I LIKE BOZ\n");
    CHECK(run("otp-encrypt --key " + d("example1/key.txt") + " --in \"" + (kWork / "bad.txt").string() + "\"") == 2);
    CHECK(err().find("'Z'") != std::string::npos);
    spit(kWork / "tuple.txt", "alphabet = a b\nbegin tuple\na b ^\nend tuple\n");
    CHECK(run("nielsen-reduce --in \"" + (kWork / "tuple.txt").string() + "\"") == 2);
}

TEST_CASE("nielsen-reduce") {
    spit(kWork / "t.txt", "alphabet = a b c d\nbegin tuple\na b\nb^-1 c\nc d\nend tuple\n");
    REQUIRE(run("nielsen-reduce --in \"" + (kWork / "t.txt").string() + "\"", "r1") == 0);
    spit(kWork / "r1.txt", out("r1"));
    REQUIRE(run("nielsen-reduce --in \"" + (kWork / "r1.txt").string() + "\"", "r2") == 0);
    CHECK(out("r2") == out("r1"));
    CHECK(out("r1").rfind("alphabet = a b c d\n", 0) == 0);

    REQUIRE(run("nielsen-reduce --canonical --in " + d("example1/key.txt"), "r3") == 0);
    CHECK(out("r3").find("a^-1 b\nc d\n") != std::string::npos);
}

TEST_CASE("public key commands") {
    REQUIRE(run("pubkey-keygen --params " + d("pubkey/params.txt") + " --n 7") == 0);
    CHECK(out() == slurp(kData + "/pubkey/public.txt"));
    REQUIRE(run("pubkey-encrypt --params " + d("pubkey/params.txt") + " --public " + d("pubkey/public.txt") +
                " --in " + d("pubkey/message.txt") + " --t 5") == 0);
    CHECK(out() == slurp(kData + "/pubkey/pair.txt"));
    REQUIRE(run("pubkey-decrypt --params " + d("pubkey/params.txt") + " --n 7 --pair " + d("pubkey/pair.txt")) == 0);
    CHECK(out() == slurp(kData + "/pubkey/message.txt"));

    REQUIRE(run("pubkey-encrypt --matrix --params " + d("pubkey/params.txt") + " --public " + d("pubkey/public.txt") +
                " --in " + d("pubkey/message.txt") + " --t 2 --out \"" + (kWork / "mpair.txt").string() + "\"") == 0);
    CHECK(slurp(kWork / "mpair.txt").find("c1 = [[") != std::string::npos);
    REQUIRE(run("pubkey-decrypt --matrix --params " + d("pubkey/params.txt") + " --n 7 --pair \"" +
                (kWork / "mpair.txt").string() + "\"") == 0);
    CHECK(out() == slurp(kData + "/pubkey/message.txt"));
    CHECK(run("pubkey-decrypt --matrix --max-len 3 --params " + d("pubkey/params.txt") + " --n 7 --pair \"" +
              (kWork / "mpair.txt").string() + "\"") == 2);
    CHECK(run("pubkey-keygen --params " + d("pubkey/params.txt") + " --n 40") == 2);
}

TEST_CASE("automorphism and representation commands") {
    REQUIRE(run("aut-apply --alphabet \"a b c d\" --aut " + d("example1/f1.aut") + " --word \"d^2 c^-2\"") == 0);
    CHECK(out() == "d c^-1 d^-1 a^-1 d^-2 a^-1 c^-1\n");
    REQUIRE(run("aut-invert --alphabet \"a b c d\" --aut " + d("example1/f1.aut") + " --out \"" +
                (kWork / "f1inv.aut").string() + "\"") == 0);
    REQUIRE(run("aut-apply --alphabet \"a b c d\" --aut \"" + (kWork / "f1inv.aut").string() +
                "\" --word \"d c^-1 d^-1 a^-1 d^-2 a^-1 c^-1\"") == 0);
    CHECK(out() == "d^2 c^-2\n");

    REQUIRE(run("rep-eval --rep demo --alphabet \"a b c d\" --in " + d("example1/ciphertext.txt")) == 0);
    CHECK(out() == slurp(kData + "/example1/matrices.txt"));
    REQUIRE(run("rep-decode --rep demo --alphabet \"a b c d\" --in " + d("example1/matrices.txt")) == 0);
    CHECK(out() == slurp(kData + "/example1/ciphertext.txt"));
}

TEST_CASE("lcg-check and attack") {
    REQUIRE(run("lcg-check --modulus-exponent 128 --beta 5 --gamma 3 --alpha 93 --count 8") == 0);
    CHECK(out().find("max_period = true") != std::string::npos);
    CHECK(out().find("7324218") != std::string::npos);
    REQUIRE(run("lcg-check --modulus-exponent 3 --beta 3 --gamma 3") == 0);
    CHECK(out().find("max_period = false") != std::string::npos);

    spit(kWork / "planted.txt", "alphabet = a b\nbegin tuple\na\nb\nend tuple\n");
    REQUIRE(run("attack --rank 2 --L 2 --N 2 --K 2 --known \"" + (kWork / "planted.txt").string() + "\"", "a1") == 0);
    CHECK(out("a1").find("subsets_examined = 120") != std::string::npos);
    CHECK(out("a1").find("hit_index = ") != std::string::npos);
    CHECK(out("a1").find("hit_index = none") == std::string::npos);
    REQUIRE(run("attack --jobs 3 --rank 2 --L 2 --N 2 --K 2 --known \"" + (kWork / "planted.txt").string() + "\"",
                "a2") == 0);
    CHECK(out("a2") == out("a1"));
    REQUIRE(run("attack --estimate --rank 4 --L 7 --N 12 --K 12") == 0);
    CHECK(out().find("ball_size = 1098056") != std::string::npos);
    CHECK(run("attack --rank 2 --L 30 --N 2 --K 2") == 2);
}
