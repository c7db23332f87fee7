from classified.main import main

main()
