#include <array>
#include <string>
#include <vector>

// Stroke tables for the built-in font. Each glyph is a list of polylines on
// a 5x7 point grid (x 0..4 left to right, y 0..6 top to bottom); every two
// characters encode one point, polylines are comma separated.

namespace collage::detail {

struct GlyphEntry {
  char ch;
  const char* strokes;
};

const GlyphEntry kGlyphTable[] = {
    {'A', "062046,1434"},
    {'B', "0006,003041423303,3344453606"},
    {'C', "4130100105163645"},
    {'D', "0006,003041453606"},
    {'E', "40000646,0333"},
    {'F', "400006,0333"},
    {'G', "41301001051636454323"},
    {'H', "0006,4046,0343"},
    {'I', "1030,2026,1636"},
    {'J', "3035261605"},
    {'K', "0006,4003,1346"},
    {'L', "000646"},
    {'M', "0600234046"},
    {'N', "06004640"},
    {'O', "103041453616050110"},
    {'P', "06000030414233,3303"},
    {'Q', "103041453616050110,2446"},
    {'R', "06000030414233,3303,1346"},
    {'S', "413010010213334445361605"},
    {'T', "0040,2026"},
    {'U', "000516364540"},
    {'V', "002640"},
    {'W', "0016223640"},
    {'X', "0046,4006"},
    {'Y', "002340,2326"},
    {'Z', "00400646"},
    {'0', "103041453616050110,1432"},
    {'1', "112026,1636"},
    {'2', "01103041420646"},
    {'3', "01103041423313,334445361605"},
    {'4', "36300444"},
    {'5', "40000333,334445361605"},
    {'6', "30100105163645443303"},
    {'7', "004016"},
    {'8', "103041423313020110,1304051636454433"},
    {'9', "43130201103041453616"},
    {'.', "2526"},
    {',', "2516"},
    {'!', "2024,2526"},
    {'?', "01103041422324,2526"},
    {'-', "1333"},
    {'\'', "2021"},
    {':', "2122,2425"},
    {'&', "460201102031320405163645"},
};

const char* lookup_strokes(char c) {
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (const GlyphEntry& e : kGlyphTable)
    if (e.ch == c) return e.strokes;
  return nullptr;
}

const std::vector<std::string>& word_list() {
  static const std::vector<std::string> words = {
      "ACE",    "AIR",    "APPLE",  "ART",    "ATOM",   "BANANA", "BEACH",
      "BEAR",   "BELL",   "BIRD",   "BLOOM",  "BOLT",   "BRAVE",  "BREAD",
      "BRICK",  "CABIN",  "CAKE",   "CANDY",  "CEDAR",  "CHAIR",  "CHARM",
      "CITY",   "CLOUD",  "COAST",  "CORAL",  "CRANE",  "CREEK",  "CROWN",
      "DANCE",  "DAWN",   "DELTA",  "DREAM",  "DRIFT",  "DUNE",   "EAGLE",
      "EARTH",  "ECHO",   "EMBER",  "FABLE",  "FERN",   "FIELD",  "FLAME",
      "FLASH",  "FLEET",  "FLINT",  "FOREST", "FROST",  "GALAXY", "GARDEN",
      "GLADE",  "GLOW",   "GRAIN",  "GROVE",  "HARBOR", "HAZEL",  "HEART",
      "HILL",   "HONEY",  "ISLAND", "IVORY",  "JADE",   "JOLLY",  "JUICE",
      "KITE",   "LAGOON", "LANTERN", "LEAF",  "LEMON",  "LIGHT",  "LILAC",
      "LUNAR",  "MANGO",  "MAPLE",  "MARBLE", "MEADOW", "MELON",  "MINT",
      "MOUNTAIN", "NIGHT", "NORTH", "OASIS",  "OCEAN",  "OLIVE",  "ONYX",
      "OPAL",   "ORBIT",  "OTTER",  "PEACH",  "PEARL",  "PEBBLE", "PILOT",
      "PINE",   "PLUM",   "POND",   "PRISM",  "QUARTZ", "QUEEN",  "QUIET",
      "RAIN",   "RAVEN",  "REEF",   "RIDGE",  "RIVER",  "ROBIN",  "ROCKET",
      "ROSE",   "SAGE",   "SAND",   "SHELL",  "SILVER", "SKY",    "SNOW",
      "SOLAR",  "SPARK",  "SPRING", "STAR",   "STONE",  "STORM",  "SUGAR",
      "SUMMIT", "SWAN",   "TIDE",   "TIGER",  "TORCH",  "TRAIL",  "TULIP",
      "VALLEY", "VELVET", "VIOLET", "WAVE",   "WHALE",  "WILLOW", "WINTER",
      "WREN",   "ZEBRA",  "ZENITH",
  };
  return words;
}

}  // namespace collage::detail
