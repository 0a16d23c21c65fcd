"""Published plot coordinates used as regression targets, keyed by q."""

# generic upper bound on the density of 5-dim 3x5 codes with distance 3
GENERIC_DENSITY_UPPER_3x5_k5_d3 = {
    2: "0.110917961672382372867113769688",
    3: "0.129026524494521861972425400496",
    4: "0.123287258101497510626354953227",
    5: "0.113475125748967373475943829331",
    7: "0.0949868052569529395383853392487",
    8: "0.0873440279264669317463461195116",
    9: "0.0807061788753077933728809956256",
    11: "0.0698812019291066937646585898411",
    13: "0.0615121742790498775027136481521",
    16: "0.0520712797956251489065881816296",
    17: "0.0495260205064709141556997934105",
    19: "0.0451065014616512900696190237045",
    23: "0.0382578452296056883148833987318",
    25: "0.0355533609036389342071944996194",
    27: "0.0332039884080708430941015137531",
    29: "0.0311444801970344273912271817675",
    31: "0.0293245576879204639258555479072",
    32: "0.0284918023066196289518691971056",
    37: "0.0249475447073089044372455903977",
    41: "0.0226882772507479364107682924123",
    43: "0.0217051592819086336624248906469",
    47: "0.0199737584836556711599266246525",
    49: "0.0192075229464873626528893035237",
    53: "0.0178386473238730394651386686111",
    59: "0.0161155104602309999278519303421",
    61: "0.0156127347873415402698399622280",
    64: "0.0149147166805079037212097668207",
    67: "0.0142763970778614240416924910323",
    71: "0.0135056544592087888585783556855",
    73: "0.0131506515711527873168813146328",
    79: "0.0121893801728231316726658302936",
    81: "0.0118994275259788672820919615392",
    83: "0.0116229423468179515418883143237",
    89: "0.0108655237101049089579353202531",
    97: "0.00999686513235324424957728962400",
    101: "0.00961260250638997750741803913018",
    103: "0.00943133680406044249694859798003",
    107: "0.00908856334209349183634430937190",
    109: "0.00892635071895234763994106395382",
    113: "0.00861869357809763500949903277923",
    121: "0.00806288603166586504264702085815",
    125: "0.00781101965404132382861496542575",
    127: "0.00769089537698515544714448781954",
    128: "0.00763220792691554033669191973313",
    131: "0.00746139830136190386563286096207",
    137: "0.00714172911239226688464071078789",
    139: "0.00704117296683542459782374398106",
    149: "0.00657806816096686550409247882578",
    151: "0.00649266141694111386929212875347",
    157: "0.00624924728360864242949829551898",
    163: "0.00602342304585894255913745122325",
    167: "0.00588172641348946503733044674041",
    169: "0.00581334874551831058609704188356",
    173: "0.00568125407000670788951667708926",
    179: "0.00549399577563675400632752450667",
    181: "0.00543428946078262825381778947833",
    191: "0.00515421894236855064075705618603",
    193: "0.00510163341115962933996943628857",
    197: "0.00499961672555037625316292077868",
    199: "0.00495012312806265509380981986570",
}

# upper bound on the density of 3x5 MRD codes with distance 3
MRD_DENSITY_UPPER_3x5_d3 = {
    2: "0.0571193301732408874395914763422",
    3: "0.0895860668080219647948805558672",
    4: "0.0953323140519103109067978972788",
    5: "0.0928644679506458497208190524940",
    7: "0.0825332080519224762001780169278",
    8: "0.0772676826812215699646200554629",
    9: "0.0723869150502000015002611845672",
    11: "0.0639341870377944451166314404035",
    13: "0.0570502788766965857820123586303",
    16: "0.0489761737067536979834143816346",
    17: "0.0467488888313594671315205165321",
    19: "0.0428341487275661621532089716759",
    23: "0.0366554274672771814090414899035",
    25: "0.0341798315315725843576977232536",
    27: "0.0320135785503349175054222753384",
    29: "0.0301028601219269701599294228932",
    31: "0.0284054735364540134015155071526",
    32: "0.0276260300639554077271909231605",
    37: "0.0242896639087979256612642234895",
    41: "0.0221471600842966973876112251063",
    43: "0.0212110947463994829435057385557",
    47: "0.0195570960662517410121835988673",
    49: "0.0188229110160594295305091030838",
    53: "0.0175079618312857230253003128779",
    59: "0.0158466946271321720476490688671",
    61: "0.0153607198198427683670538729842",
    64: "0.0146850964699387406765257697186",
    67: "0.0140663137722623290884116389405",
    71: "0.0133179673168924317204218105820",
    73: "0.0129728426576969132485176064591",
    79: "0.0120369414687896652093042086650",
    81: "0.0117542477855727931225187600918",
    83: "0.0114845151332527742814959471403",
    89: "0.0107447509400876366837743762818",
    97: "0.00989482443115178964938243290150",
    101: "0.00951833412387864070722549767389",
    103: "0.00934062571378453977239436410808",
    107: "0.00900438832848733603786175341499",
    109: "0.00884518195212466318505334676317",
    113: "0.00854307354715539888126518258719",
    121: "0.00799678347865295923659150999415",
    125: "0.00774901571827163926457049956140",
    127: "0.00763079925314918584165500070755",
    128: "0.00757303285665540512906647932377",
    131: "0.00740486282277226340072717838197",
    137: "0.00708996929858142476477517398221",
    139: "0.00699087117509322185418742690352",
    149: "0.00653420852536289415620825340776",
    151: "0.00644994099213207204916345887116",
    157: "0.00620969033199550796054013889158",
    163: "0.00598669075945925782309922944346",
    167: "0.00584671241553694095017340103533",
    169: "0.00577914902632435660059285258168",
    173: "0.00564859994893854982406928490207",
    179: "0.00546347075052124352862120542926",
    181: "0.00540442802299524484566994402407",
    191: "0.00512737186724300723448827673795",
    193: "0.00507533423540796054396073447408",
    197: "0.00497436420365012990461432225254",
    199: "0.00492537065600248572754089434279",
}

# large-m bound phi(1/q)^(q(d-1)(n-d+1)+1) at n=d=3
EULER_POWER_M_BOUND_n3_d3 = {
    2: "0.00200861374478225826545433309169",
    3: "0.0172981854536559066298775195858",
    4: "0.0347815230728943907748000355616",
    5: "0.0490954176866865783402860880426",
    7: "0.0690699779444482735868732671831",
    8: "0.0760978586138095612708591476479",
    9: "0.0818190922629343056556067432747",
    11: "0.0905347600108603123388378520459",
    13: "0.0968388143804218181044443831483",
    16: "0.103568234534981703177034136934",
    17: "0.105320312782207408425836493253",
    19: "0.108304666163287583548901598085",
    23: "0.112792835431191270163985488899",
    25: "0.114522132827022491158795225920",
    27: "0.116005522417876548095747503820",
    29: "0.117291878917620425909980354413",
    31: "0.118417952624045207034154186244",
}

# large-m upper bound on MRD density at n=d=3
MRD_DENSITY_UPPER_M_n3_d3 = {
    2: "0.0548268869286448122598706315360",
    3: "0.0892135433490818745938532625822",
    4: "0.0952432974139241038778555389371",
    5: "0.0928365444429189115539652303954",
    7: "0.0825286196622346390460484836825",
    8: "0.0772654759364910868946547174941",
    9: "0.0723857650525810489961379827504",
    11: "0.0639338125913387247111134533627",
    13: "0.0570501331875791046278912090352",
    16: "0.0489761291228975518106363106458",
    17: "0.0467488573425071574213321250036",
    19: "0.0428341321257948306765597390756",
    23: "0.0366554219710014133047488284911",
    25: "0.0341798281459777455411237693009",
    27: "0.0320135763878174024613938609447",
    29: "0.0301028586968346119618505603765",
    31: "0.0284054725714775897626415139338",
}
